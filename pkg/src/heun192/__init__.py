"""Local solutions of the hypergeometric and Heun equations, generated from
the action of even-signed permutation groups on asymmetric Fuchsian
equations, with exact symbolic tables and a numeric cross-check."""

__version__ = "0.1.0"
