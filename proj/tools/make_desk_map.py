#!/usr/bin/env python3
"""Generates maps/desk.pgm and maps/desk.meta: a 20 m x 20 m office floor at
0.1 m per cell with a central corridor, six rooms and some desks."""

import pathlib
import sys

RES = 0.1
W = H = 200


def main(out_dir: pathlib.Path) -> None:
    free = [[True] * W for _ in range(H)]  # free[row][col], row 0 at y = 0

    def block(x0, y0, x1, y1):
        for r in range(round(y0 / RES), round(y1 / RES)):
            for c in range(round(x0 / RES), round(x1 / RES)):
                if 0 <= r < H and 0 <= c < W:
                    free[r][c] = False

    def opening(x0, y0, x1, y1):
        for r in range(round(y0 / RES), round(y1 / RES)):
            for c in range(round(x0 / RES), round(x1 / RES)):
                free[r][c] = True

    # outer walls
    block(0, 0, 20, 0.2)
    block(0, 19.8, 20, 20)
    block(0, 0, 0.2, 20)
    block(19.8, 0, 20, 20)

    # corridor walls between y = 8.5 and y = 11.5
    block(0, 8.3, 20, 8.5)
    block(0, 11.5, 20, 11.7)

    # room dividers
    for x in (6.6, 13.2):
        block(x, 0, x + 0.2, 8.5)
        block(x, 11.5, x + 0.2, 20)

    # doors, 1.2 m wide
    for x in (2.6, 9.2, 15.8):
        opening(x, 8.3, x + 1.2, 8.5)
        opening(x + 0.8, 11.5, x + 2.0, 11.7)

    # desks
    for x0, y0 in ((1.5, 3.0), (4.0, 5.5), (8.5, 2.0), (10.5, 5.0), (15.0, 3.5),
                   (17.0, 6.0), (2.0, 15.0), (4.5, 17.5), (8.0, 14.5), (10.5, 17.0),
                   (15.5, 14.0), (16.5, 17.5)):
        block(x0, y0, x0 + 1.2, y0 + 0.6)

    # pillars in the corridor
    for x in (6.0, 14.0):
        block(x, 9.8, x + 0.4, 10.2)

    out_dir.mkdir(parents=True, exist_ok=True)
    with open(out_dir / "desk.pgm", "wb") as f:
        f.write(f"P5\n{W} {H}\n255\n".encode())
        for r in reversed(range(H)):  # file rows run top to bottom
            f.write(bytes(255 if free[r][c] else 0 for c in range(W)))
    (out_dir / "desk.meta").write_text(
        "resolution: 0.1\norigin_x: 0\norigin_y: 0\noccupied_threshold: 50\nfree_threshold: 200\n")


if __name__ == "__main__":
    main(pathlib.Path(sys.argv[1] if len(sys.argv) > 1 else "maps"))
