#!/usr/bin/env python3
# Copyright 2026 The ewbench Authors
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

"""Regenerates fixtures/realworld40: 9/5/6/10/10 small category-coloured images.

Colours match the mock backend's palette so a palette-rule mock classifies
every item correctly. A few items are written as JPEG to cover both decoders.
"""
import json
import pathlib
import random

from PIL import Image

PALETTE = {
    "cardboard": (176, 128, 80),
    "glass": (64, 176, 160),
    "metal": (144, 144, 152),
    "paper": (240, 240, 232),
    "plastic": (48, 80, 208),
}
COUNTS = {"cardboard": 9, "glass": 5, "metal": 6, "paper": 10, "plastic": 10}


def main() -> None:
    root = pathlib.Path(__file__).resolve().parent.parent / "fixtures"
    tree = root / "realworld40"
    rng = random.Random(40)
    manifest = []
    for cat, n in COUNTS.items():
        (tree / cat).mkdir(parents=True, exist_ok=True)
        for i in range(n):
            img = Image.new("RGB", (64, 48))
            px = img.load()
            for y in range(48):
                for x in range(64):
                    px[x, y] = tuple(
                        max(0, min(255, c + rng.randint(-10, 10))) for c in PALETTE[cat])
            ext = "jpg" if i % 4 == 3 else "png"
            name = f"{cat}_{i:03d}.{ext}"
            img.save(tree / cat / name, quality=95)
            manifest.append({"file": f"realworld40/{cat}/{name}", "truth": cat})
    with open(root / "realworld40.jsonl", "w") as f:
        for m in manifest:
            f.write(json.dumps(m) + "\n")


if __name__ == "__main__":
    main()
