"""Monadic deductive databases with empirical probability intervals."""
