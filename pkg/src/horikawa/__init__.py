"""Exact numerical geometry of Horikawa surfaces and their characteristic-2 constructions."""

__version__ = "0.1.0"
