#!/usr/bin/env python3
"""Writes fixtures/tri444_orbit.json: the (4,4,4) rotation group acting on the
decorated cone points of tri444, with the two Delaunay faces of one fundamental
domain."""
import json
import math
import sys

WEIGHT = 1.1
SIDE = math.acosh(1.0 + math.sqrt(2.0))


def point(r, theta):
    return (math.cosh(r), math.sinh(r) * math.cos(theta), math.sinh(r) * math.sin(theta))


def rotation(p, phi):
    t, a, b = p
    s = math.sqrt(2.0 * t + 2.0)
    h = ((t + b + 1.0) / s, a / s, a / s, (t - b + 1.0) / s)
    hinv = (h[3], -h[1], -h[2], h[0])
    r = (math.cos(phi), -math.sin(phi), math.sin(phi), math.cos(phi))
    return mul(mul(hinv, r), h)


def mul(x, y):
    return (x[0] * y[0] + x[1] * y[2], x[0] * y[1] + x[1] * y[3],
            x[2] * y[0] + x[3] * y[2], x[2] * y[1] + x[3] * y[3])


def act(g, v):
    t, a, b = v
    x = ((t + b, a), (a, t - b))
    ga, gb, gc, gd = g
    gm = ((ga, gb), (gc, gd))
    xg = [[sum(x[i][k] * gm[k][j] for k in range(2)) for j in range(2)] for i in range(2)]
    y = [[sum(gm[k][i] * xg[k][j] for k in range(2)) for j in range(2)] for i in range(2)]
    return ((y[0][0] + y[1][1]) / 2.0, y[0][1], (y[0][0] - y[1][1]) / 2.0)


def mdot(x, y):
    return -x[0] * y[0] + x[1] * y[1] + x[2] * y[2]


def normal(x, y):
    # <n, x> = <n, y> = 0
    e = (x[1] * y[2] - x[2] * y[1], x[2] * y[0] - x[0] * y[2], x[0] * y[1] - x[1] * y[0])
    return (-e[0], e[1], e[2])


def main(out):
    # cosh(side) = cosh^2 R + sinh^2 R / 2 for three points at radius R, 120 degrees apart.
    s2 = (math.cosh(SIDE) - 1.0) / 1.5
    radius = math.asinh(math.sqrt(s2))
    centers = [point(radius, 2.0 * math.pi * k / 3.0) for k in range(3)]
    cycles = [tuple(x / WEIGHT for x in p) for p in centers]
    gens = [rotation(p, math.pi / 4.0) for p in centers]

    # Mirror of the first face across the line through centers 1 and 2.
    line = normal(centers[1], centers[2])
    inverse = (gens[1][3], -gens[1][1], -gens[1][2], gens[1][0])
    far = None
    for g in (gens[1], inverse):
        c = act(g, cycles[0])
        if mdot(line, c) * mdot(line, cycles[0]) < 0.0:
            far = c
    if far is None:
        sys.exit("mirror vertex not found")

    doc = {
        "format": "dechyp-orbit-v1",
        "generators": [[[g[0], g[1]], [g[2], g[3]]] for g in gens],
        "seeds": [list(c) for c in cycles],
        "depth": 4,
        "faces": [[list(c) for c in cycles], [list(cycles[2]), list(cycles[1]), list(far)]],
    }
    with open(out, "w") as f:
        json.dump(doc, f, indent=2)
        f.write("\n")


if __name__ == "__main__":
    main(sys.argv[1] if len(sys.argv) > 1 else "fixtures/tri444_orbit.json")
