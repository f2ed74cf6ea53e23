# Lie-theoretic engine: diagrams, roots, Weyl groups and the brute-force oracle
