"""Locally repairable secret sharing: codes, schemes, bounds and audits."""

__version__ = "0.1.0"
