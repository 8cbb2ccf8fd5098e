"""Settings, errors and numerical quadrature shared by every package."""
