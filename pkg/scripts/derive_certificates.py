"""Fill in missing Tietze steps and consequence factors in the atlas data file.

Run after editing a certificate spec; the searches can take a minute.  The
result is written back in place and re-verified on the next load.

    python3 scripts/derive_certificates.py [--budget N] [PATH]
"""

import argparse
import json
import time

from heegaard_atlas.atlas import default_atlas_path, derive_certificates, load_atlas


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("path", nargs="?", default=None)
    ap.add_argument("--budget", type=int, default=20_000)
    args = ap.parse_args()
    path = args.path or default_atlas_path()
    with open(path) as fh:
        data = json.load(fh)
    t = time.time()
    derive_certificates(data, budget=args.budget)
    with open(path, "w") as fh:
        json.dump(data, fh, indent=2)
        fh.write("\n")
    load_atlas(path)  # raises if anything stored fails to verify
    print(f"derived and verified {path} in {time.time() - t:.1f}s")


if __name__ == "__main__":
    main()
