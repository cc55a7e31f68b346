"""Unknotting-number-one decision for alternating knots.

Submodules:
    diagram      planar diagrams, chessboard colourings, moves
    goeritz      Goeritz matrices, determinant, signature
    graphlattice lattices of planar multigraphs
    changemaker  change-maker vectors and lattices
    embedder     lattice embedding search
    markers      marked crossings, certificates, decision pipeline
    oracle       brute-force polynomial ground truth
    cli          command-line front end
"""

__version__ = "0.1.0"
