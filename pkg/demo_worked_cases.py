#!/usr/bin/env python3
"""
Demo script walking through the three worked cases: c_{1,0}(8), d_1(8) and the g_α(8) family.
"""

import sys
from pathlib import Path

# Add src to path
sys.path.insert(0, str(Path(__file__).parent / "src"))

from src.models.rational import format_rational
from src.models.verdict import VerdictStatus
from src.services.catalog_service import CatalogService
from src.services.derivation_service import pre_einstein
from src.services.einstein_nilradical_service import EinsteinNilradicalService


def show_verdict(verdict):
    print(f"   Status: {verdict.status.value}")
    print(f"   Eigenvalues: {' '.join(format_rational(v) for v in verdict.eigenvalues)}")
    print(f"   Roots ({len(verdict.roots)}): " + " ".join(f"({i},{j},{k})" for i, j, k in verdict.roots))
    if verdict.family is not None:
        print(f"   Uv = 1 has {verdict.family.free_parameters} free parameter(s):")
        for index in range(verdict.family.dim):
            print(f"      v{index + 1} = {verdict.family.coordinate_text(index)}")
    if verdict.status == VerdictStatus.YES:
        print(f"   ✅ Positive solution: {' '.join(format_rational(v) for v in verdict.witness.vector)}")
    elif verdict.certificate is not None:
        print(f"   ❌ Certificate: {verdict.certificate.describe()}")
    else:
        print(f"   ➖ {verdict.reason}")
    print()


def main():
    """Run the Einstein-nilradical test on the worked cases."""
    print("🧮 Filiform Einstein Nilradicals - Worked Cases")
    print("=" * 50)

    catalog = CatalogService()
    service = EinsteinNilradicalService()

    print("📐 c_{1,0}(8): a coordinate of every solution is negative")
    show_verdict(service.en_test(catalog.get("c_1_0_8")))

    print("📐 d_1(8): a one-parameter family containing a positive vector")
    show_verdict(service.en_test(catalog.get("d1_8")))

    print("📐 g_α(8): the verdict flips at α = -2")
    for alpha in ("-3", "-2", "-1", "0", "1/2", "3"):
        algebra = catalog.get("g8", {"alpha": alpha})
        verdict = service.en_test(algebra)
        result = pre_einstein(algebra)
        mark = "✅" if verdict.status == VerdictStatus.YES else "❌"
        print(f"   {mark} α = {alpha:>4}: {verdict.status.value:<3} type {result.type_text}")
    print()

    print("💡 Try the command line as well:")
    print("   python main.py en-test c_1_0_8 --certificate")
    print("   python main.py table2")


if __name__ == "__main__":
    main()
