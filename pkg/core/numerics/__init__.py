"""Extended-precision numerics: special functions, series, quadrature and closed forms."""
