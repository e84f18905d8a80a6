"""Exact cubical higher Chow cycle calculus."""
