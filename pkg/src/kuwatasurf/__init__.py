"""Elliptic surfaces from pairs of elliptic curves, with exact section search and height pairings."""
