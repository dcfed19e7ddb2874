#!/usr/bin/env python3
"""Render a unit-ball polygon from `sclkit ball --json` output.

    sclkit ball chain3.gg --class "e1.from=1,e1.to=-1" \
        --class "e2.from=-1,e2.to=1" --json | python3 plot_ball.py
"""
import json
import math
import sys
from fractions import Fraction

import matplotlib.pyplot as plt

fan = json.load(sys.stdin)
if fan["unbounded"]:
    sys.exit("ball is unbounded (lineality directions present)")
pts = [(Fraction(v["x"]), Fraction(v["y"])) for v in fan["ball_vertices"]]
pts.sort(key=lambda p: math.atan2(p[1], p[0]))
xs = [float(x) for x, _ in pts] + [float(pts[0][0])]
ys = [float(y) for _, y in pts] + [float(pts[0][1])]
plt.figure(figsize=(5, 5))
plt.plot(xs, ys, "o-")
plt.axhline(0, color="gray", lw=0.5)
plt.axvline(0, color="gray", lw=0.5)
plt.gca().set_aspect("equal")
plt.title("unit ball")
plt.savefig("ball.png", dpi=150)
print("wrote ball.png")
