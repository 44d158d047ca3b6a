"""Exact Segre varieties and Segre-degeneracy loci of real-algebraic sets in C^n."""
