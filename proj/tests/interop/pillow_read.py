#!/usr/bin/env python3
# Copyright 2026 The slimslide Authors. All Rights Reserved.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Reads slimslide pyramids with Pillow (libtiff) as an independent TIFF reader.

usage: pillow_read.py <slimslide-cli> <work-dir>
"""

import json
import pathlib
import shutil
import subprocess
import sys

import numpy as np
from PIL import Image


def run(cli, *args):
    proc = subprocess.run([cli, "-q", *args], capture_output=True, text=True)
    if proc.returncode != 0:
        sys.exit(f"{' '.join(args[:1])} exited {proc.returncode}: {proc.stderr}")
    return json.loads(proc.stdout)


def frames(path):
    with Image.open(path) as im:
        out = []
        for i in range(im.n_frames):
            im.seek(i)
            out.append(np.asarray(im.convert("RGB")).astype(np.int32))
        return out


def tissue(rgb):
    return ((255 - rgb) ** 2).sum(axis=2) > 85 * 85


def main():
    cli, work = sys.argv[1], pathlib.Path(sys.argv[2])
    shutil.rmtree(work, ignore_errors=True)
    work.mkdir(parents=True)
    failures = []

    for codec in ("png", "jpeg:90"):
        out = work / codec.replace(":", "_")
        report = run(cli, "synth", "-o", str(out), "--seed", "3", "--width", "1000", "--height", "700",
                     "--levels", "3", "--codec", codec)
        levels = frames(out / "slide.tiff")
        if len(levels) != len(report["levels"]):
            failures.append(f"{codec}: {len(levels)} pages, expected {len(report['levels'])}")
            continue
        for page, meta in zip(levels, report["levels"]):
            if page.shape[:2] != (meta["height"], meta["width"]):
                failures.append(f"{codec}: page shape {page.shape[:2]} != {meta['height']}x{meta['width']}")
        truth = np.asarray(Image.open(out / "ground_truth.png").convert("L")) > 127
        seg = tissue(levels[0])
        if codec == "png":
            mismatches = int((seg != truth).sum())
            if mismatches:
                failures.append(f"png: {mismatches} pixels disagree with the ground truth")
        else:
            dice = 2 * (seg & truth).sum() / max(1, seg.sum() + truth.sum())
            if dice < 0.99:
                failures.append(f"jpeg: Dice {dice:.4f} against the ground truth")
        print(f"{codec}: {len(levels)} pages read by Pillow")

    # Sparse output: present tiles must read back; libtiff may reject zero-byte tiles.
    src = work / "png" / "slide.tiff"
    sparse = work / "sparse.tiff"
    run(cli, "convert", "-i", str(src), "-o", str(sparse), "--policy", "empty", "--codec", "png", "--no-baseline")
    try:
        page = frames(sparse)[0]
        print(f"sparse: Pillow read level 0 {page.shape[1]}x{page.shape[0]}")
    except Exception as exc:  # reader-specific; recorded, not asserted
        print(f"sparse: Pillow could not read zero-byte tiles ({exc})")

    for f in failures:
        print("FAIL", f)
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())
