"""Twisted link diagrams as bar-extended Gauss codes."""
