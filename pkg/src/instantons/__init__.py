"""Instanton numbers of rank-2 bundles on the blown-up plane."""
