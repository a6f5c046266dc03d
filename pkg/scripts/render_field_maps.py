#!/usr/bin/env python3
"""Render the standard gallery of SVG field maps under maps/."""

import sys
from pathlib import Path

from abgauge import (LandauField, SolenoidSpec, SolenoidTransverseField,
                     TransformedPotentialField)
from abgauge.svgmap import emit_field_map


def main() -> int:
    out_dir = Path(sys.argv[1]) if len(sys.argv) > 1 else Path("maps")
    out_dir.mkdir(parents=True, exist_ok=True)
    s = SolenoidSpec(1.0, 1.0)
    jobs = [
        ("solenoid_AS.svg", SolenoidTransverseField(s), s),
        ("solenoid_Aprime.svg", TransformedPotentialField(s), s),
        ("landau_S.svg", LandauField("S", 1.0), None),
        ("landau_L1.svg", LandauField("L1", 1.0), None),
        ("landau_L2.svg", LandauField("L2", 1.0), None),
    ]
    for name, field, solenoid in jobs:
        path = emit_field_map(field, (-3, 3, -3, 3), 24, out_dir / name,
                              solenoid=solenoid)
        print(f"wrote {path}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
