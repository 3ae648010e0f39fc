"""Coronate a chain of Lefschetz vanishing cycles and inspect the merges."""

import sys
import time
from pathlib import Path

from crown import io as cio
from crown.coronation import coronate, pseudocoronate
from crown.diagrams import CrownDiagram
from crown.render import RenderSpec, render_svg
from crown.samples import lefschetz_chain


def main(n: int = 3, out_dir: str = "out_coronation"):
    out = Path(out_dir)
    out.mkdir(exist_ok=True)
    fib = lefschetz_chain(n)
    cio.save(fib, out / "fibration.json")
    t0 = time.time()
    res = coronate(fib)
    print(f"coronation of n={n} in {time.time() - t0:.1f}s; "
          f"certificate has {len(res.certificate)} steps")
    for lines in res.merge_logs:
        for line in lines:
            print(f"  {line}")
    cio.save(res.coronation, out / "coronation.json")
    stab, pseudo, _ = pseudocoronate(fib, phi=res.path)
    cio.save(CrownDiagram(stab.chart, pseudo), out / "pseudocoronation.json")
    cio.save(res.certificate, out / "certificate.json")
    (out / "coronation.svg").write_text(render_svg(res.coronation, RenderSpec()))
    print(f"wrote {out}/coronation.json, pseudocoronation.json, certificate.json")
    print(f"verify offline:  crown check {out}/coronation.json "
          f"{out}/pseudocoronation.json --cert {out}/certificate.json --rotate --invert")


if __name__ == "__main__":
    main(*(int(a) for a in sys.argv[1:2]), *sys.argv[2:3])
