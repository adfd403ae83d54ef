"""Surface grids, minor models and connectivity certificates."""
