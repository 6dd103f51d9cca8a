"""Backend package: elliptic kernel, surface families, bounds and the verification harness."""
