"""Self-avoiding walks on the honeycomb lattice: exact observable identities and bridge decompositions."""

__version__ = "0.1.0"
