"""Exact computations for the three-parameter affine Hecke algebra of type C,
its tensor module, the coideal quantum-group actions, and the associated
Schur algebras."""

__version__ = "0.1.0"
