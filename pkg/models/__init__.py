"""Models package for parameters, records, reports and geodesic traces."""
