"""Alpha-beta chess search with dynamic move chains and move tables."""
