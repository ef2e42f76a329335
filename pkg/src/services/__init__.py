"""Services package for the cofactorization pipeline."""
