"""Scan primes for kappa_p, eta_p and Gamma_max, then fit the empirical constants."""
import sys
import tempfile
from pathlib import Path

from galoismax.harness import ScanConfig, scan

upper = int(sys.argv[1]) if len(sys.argv) > 1 else 3000
with tempfile.TemporaryDirectory() as tmp:
    result = scan(ScanConfig(3, upper, out=Path(tmp) / "scan.csv"))
    for r in result.records[:5]:
        print(r)
    print("...")
    for key, value in result.summary.to_json().items():
        print(f"{key:>24s}: {value}")
