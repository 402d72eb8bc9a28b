"""Self-contained reproductions: thin Schubert cells, hermitian counting, GSp4 strata."""
