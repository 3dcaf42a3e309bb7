#!/usr/bin/env python3
"""Recreate MovieLens 100K u.data from the copy bundled in a PyPI wheel.

The pytorch-widedeep 1.7.0 wheel ships the 100K ratings as a brotli parquet
file (user_id, movie_id, rating, timestamp in the original row order). This
downloads the wheel with pip and writes the tab-separated u.data layout.

    python3 tools/fetch_ml100k.py [--out data/ml-100k/u.data]

Needs pandas and pyarrow.
"""

import argparse
import hashlib
import io
import pathlib
import subprocess
import sys
import tempfile
import zipfile

WHEEL = "pytorch-widedeep==1.7.0"
MEMBER = "pytorch_widedeep/datasets/data/MovieLens100k_data.parquet.brotli"
EXPECTED_MD5 = "6e47046882bad158b0efbb84cd5cb987"


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--out", default="data/ml-100k/u.data", type=pathlib.Path)
    args = parser.parse_args()

    import pandas as pd

    with tempfile.TemporaryDirectory() as tmp:
        subprocess.run(
            [sys.executable, "-m", "pip", "download", "--no-deps", "--quiet", "--disable-pip-version-check", "-d", tmp, WHEEL],
            check=True,
        )
        wheel = next(pathlib.Path(tmp).glob("*.whl"))
        with zipfile.ZipFile(wheel) as z:
            frame = pd.read_parquet(io.BytesIO(z.read(MEMBER)))

    frame = frame[["user_id", "movie_id", "rating", "timestamp"]]
    args.out.parent.mkdir(parents=True, exist_ok=True)
    frame.to_csv(args.out, sep="\t", header=False, index=False)

    digest = hashlib.md5(args.out.read_bytes()).hexdigest()
    print(f"wrote {len(frame)} ratings to {args.out} (md5 {digest})")
    if digest != EXPECTED_MD5:
        print(f"warning: expected md5 {EXPECTED_MD5}", file=sys.stderr)
    return 0


if __name__ == "__main__":
    sys.exit(main())
