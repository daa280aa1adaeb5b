"""Exact scalars, polynomials, resultants, root finding and linear algebra."""
