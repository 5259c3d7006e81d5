"""Write and re-verify realization certificates for a list of groups.

Usage: python3 scripts/realize_groups.py [--q-max 13] [--out certs] [GROUP ...]
"""

from __future__ import annotations

import argparse
import json
from dataclasses import dataclass, field
from pathlib import Path

from classforge.forge import GroupSpec, realize, verify_certificate

DEFAULT_GROUPS = ["0", "Z/5", "Z/12", "Z/6+Z/15", "Z^2+Z/2+Z/4", "Z^10"]


@dataclass
class RealizeRun:
    groups: list[str] = field(default_factory=lambda: list(DEFAULT_GROUPS))
    q_max: int | None = 13
    out: Path = Path("certs")


def _slug(text: str) -> str:
    return text.replace("^", "").replace("/", "_").replace("+", "-") or "0"


def main(run: RealizeRun) -> int:
    run.out.mkdir(parents=True, exist_ok=True)
    failures = 0
    for text in run.groups:
        spec = GroupSpec.parse(text)
        cert = realize(spec, demo_q_max=run.q_max)
        path = run.out / f"{_slug(text)}.json"
        path.write_text(json.dumps(cert, indent=2) + "\n", encoding="utf-8")
        rep = verify_certificate(json.loads(path.read_text(encoding="utf-8")))
        demo = cert.get("demo")
        where = f"demo q={demo['q']} {demo['curve']}" if demo else "no demo"
        status = "ok" if rep.passed else f"FAILED at {rep.first_failure}"
        print(f"{text:>14}  n={cert['tower_height']:<3} {where:<40} {status}")
        failures += not rep.passed
    return int(failures > 0)


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("groups", nargs="*", default=DEFAULT_GROUPS)
    ap.add_argument("--q-max", type=int, default=13)
    ap.add_argument("--out", type=Path, default=Path("certs"))
    a = ap.parse_args()
    raise SystemExit(main(RealizeRun(a.groups, a.q_max, a.out)))
