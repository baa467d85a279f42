#!/usr/bin/env python3
"""Regenerates the bundled surface files in data/."""
import json
import math
import pathlib

OUT = pathlib.Path(__file__).resolve().parent.parent / "data"


def square(cid, ox, oy=0.0, s=1.0):
    return {"id": cid, "vertices": [[ox, oy], [ox + s, oy], [ox + s, oy + s], [ox, oy + s]]}


def glue(a, b, rot=None):
    g = {"from": list(a), "to": list(b)}
    if rot is not None:
        g["rotation_pi"] = list(rot)
    return g


def rotation_for(dir_a, dir_b):
    # rotation (in units of pi) taking edge direction a onto the reverse of edge direction b
    from fractions import Fraction
    r = (Fraction(dir_b) + 1 - Fraction(dir_a)) % 2
    return [r.numerator, r.denominator]


def write(name, polys, gluings):
    OUT.mkdir(exist_ok=True)
    with open(OUT / name, "w") as f:
        f.write('{\n "polygons": [\n  ')
        f.write(",\n  ".join(json.dumps(p) for p in polys))
        f.write('\n ],\n "gluings": [\n  ')
        f.write(",\n  ".join(json.dumps(g) for g in gluings))
        f.write("\n ]\n}\n")


def write_words(name, words):
    with open(OUT / name, "w") as f:
        f.write("[\n ")
        f.write(",\n ".join(json.dumps(w) for w in words))
        f.write("\n]\n")


def octagon(cid, ox=0.0, oy=0.0, scale=1.0):
    vs = []
    for k in range(8):
        a = math.pi / 8 + k * math.pi / 4
        vs.append([ox + scale * math.cos(a), oy + scale * math.sin(a)])
    return {"id": cid, "vertices": vs}


def main():
    write("torus.json", [square(0, 0)],
          [glue((0, 0), (0, 2), (0, 1)), glue((0, 1), (0, 3), (0, 1))])

    write("torus_2x1.json", [{"id": 0, "vertices": [[0, 0], [2, 0], [2, 1], [0, 1]]}],
          [glue((0, 0), (0, 2), (0, 1)), glue((0, 1), (0, 3), (0, 1))])

    write("octagon.json", [octagon(0)],
          [glue((0, k), (0, k + 4), (0, 1)) for k in range(4)])

    write("octagon_scaled.json", [octagon(0, scale=1.5)],
          [glue((0, k), (0, k + 4), (0, 1)) for k in range(4)])

    write("l_shape.json", [square(0, 0, 0), square(1, 1, 0), square(2, 0, 1)],
          [glue((0, 1), (1, 3), (0, 1)), glue((1, 1), (0, 3), (0, 1)),
           glue((0, 2), (2, 0), (0, 1)), glue((2, 2), (0, 0), (0, 1)),
           glue((2, 1), (2, 3), (0, 1)), glue((1, 2), (1, 0), (0, 1))])

    # six unit squares, two half-turn gluings; cone angles 3pi and 9pi
    pairs = [((0, 1), (4, 3)), ((0, 2), (0, 0)), ((0, 3), (2, 1)), ((1, 2), (2, 0)),
             ((1, 3), (5, 1)), ((2, 2), (3, 2)), ((3, 3), (1, 1)), ((4, 0), (1, 0)),
             ((4, 1), (2, 3)), ((4, 2), (5, 0)), ((5, 2), (3, 0)), ((5, 3), (3, 1))]
    write("halftrans.json", [square(c, 2.0 * c) for c in range(6)],
          [glue(a, b, rotation_for(a[1] / 2, b[1] / 2)) for a, b in pairs])

    # four unit squares with quarter-turn gluings; cone angles 5pi/2 and 11pi/2
    pairs = [((2, 3), (1, 1)), ((0, 2), (0, 0)), ((1, 3), (3, 1)), ((3, 3), (2, 0)),
             ((0, 3), (2, 1)), ((1, 2), (3, 0)), ((0, 1), (2, 2)), ((3, 2), (1, 0))]
    write("cone52.json", [square(c, 2.0 * c) for c in range(4)],
          [glue(a, b, rotation_for(a[1] / 2, b[1] / 2)) for a, b in pairs])

    # two regular hexagons, exactly one 2pi/3 gluing; cone angles 8pi/3 and 16pi/3
    def hexagon(cid, ox):
        return {"id": cid, "vertices": [[ox + math.cos(k * math.pi / 3), math.sin(k * math.pi / 3)]
                                        for k in range(6)]}
    from fractions import Fraction
    pairs = [((0, 0), (0, 2)), ((0, 1), (0, 3)), ((0, 4), (1, 1)), ((0, 5), (1, 4)),
             ((1, 0), (1, 3)), ((1, 2), (1, 5))]
    write("badangle.json", [hexagon(0, 0.0), hexagon(1, 3.0)],
          [glue(a, b, rotation_for(Fraction(a[1], 3), Fraction(b[1], 3))) for a, b in pairs])

    # two octagons, each fanned into eight triangles, cross-glued along the slit
    # from the centre to one vertex; genus 4
    polys, gl = [], []
    for sheet, ox in ((0, 0.0), (1, 3.0)):
        for k in range(8):
            a0 = math.pi / 8 + k * math.pi / 4
            a1 = a0 + math.pi / 4
            polys.append({"id": sheet * 8 + k, "vertices": [
                [ox, 0.0], [ox + math.cos(a0), math.sin(a0)], [ox + math.cos(a1), math.sin(a1)]]})
    for sheet in (0, 1):
        base = sheet * 8
        for k in range(7):
            gl.append(glue((base + k, 2), (base + k + 1, 0), (0, 1)))
        for k in range(4):
            gl.append(glue((base + k, 1), (base + k + 4, 1), (0, 1)))
    gl.append(glue((7, 2), (8, 0), (0, 1)))
    gl.append(glue((15, 2), (0, 0), (0, 1)))
    write("double_octagon.json", polys, gl)

    # closed-curve words: lists of [chart_id, edge, direction]
    write_words("torus_words.json", [[[0, 1, 1]], [[0, 2, 1]], [[0, 1, 1], [0, 2, 1]]])
    write_words("octagon_words.json", [[[0, k, 1]] for k in range(4)] + [[[0, 0, 1], [0, 1, 1]]])


if __name__ == "__main__":
    main()
