"""Brauer complexes of symmetric special biserial algebras"""
