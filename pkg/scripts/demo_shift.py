"""Run a generalized shift on the genus-2 chain crown and save everything:
input, output, certificate, and SVG renders of both diagrams."""

import sys
import time
from pathlib import Path

from crown import io as cio
from crown.moves import shift
from crown.render import RenderSpec, render_svg
from crown.samples import chain_crown_g2_l4


def main(out_dir: str = "out_shift", k: int = 2):
    out = Path(out_dir)
    out.mkdir(exist_ok=True)
    d = chain_crown_g2_l4()
    cio.save(d, out / "input.json")
    t0 = time.time()
    res = shift(d, k)
    print(f"shift k={k} in {time.time() - t0:.2f}s, "
          f"certificate has {len(res.certificate)} steps")
    for line in res.log:
        print(f"  {line}")
    cio.save(res.output, out / "output.json")
    cio.save(res.certificate, out / "certificate.json")
    (out / "input.svg").write_text(render_svg(d, RenderSpec()))
    (out / "output.svg").write_text(render_svg(res.output, RenderSpec()))
    print(f"wrote {out}/input.json, output.json, certificate.json and SVGs")
    print(f"verify offline:  crown check {out}/output.json {out}/input.json "
          f"--cert {out}/certificate.json --rotate --invert")


if __name__ == "__main__":
    main(*sys.argv[1:2], *(int(a) for a in sys.argv[2:3]))
