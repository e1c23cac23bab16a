"""Self-checks of the decomposition theory against brute force."""
