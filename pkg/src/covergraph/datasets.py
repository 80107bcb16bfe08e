"""Dataset loaders and generators.

- Tic-Tac-Toe endgames: every legal final board (crosses = +1 move first,
  noughts = -1, empty = 0; play stops at the first three-in-a-row or a
  full board), with the game outcome as a coloring column and the
  dihedral-8 board symmetries as a group action on indices.
- A sampled nonlinear circle embedding in R^7 and its product with an
  interval in R^8, linked by the projection relation.
- Generic numeric CSV clouds with column roles.
- The bundled four-balls-to-three-balls relation demo used by the service
  fixture, the explorer, and the fraction-matrix tests.
"""
from __future__ import annotations

import csv
import json
from dataclasses import dataclass

import numpy as np

from .errors import NonNumericCell, RaggedRows
from .geometry import GroupAction, Metric, PointCloud, build_action_from_coordinate_maps
from .nerve import CoverGraph, build_ball_mapper
from .nets import greedy_net
from .relations import Relation, relation_from_pairs

_LINES = ((0, 1, 2), (3, 4, 5), (6, 7, 8), (0, 3, 6), (1, 4, 7), (2, 5, 8), (0, 4, 8), (2, 4, 6))

# Cell permutations of the 3x3 board (row-major indices 0..8): a quarter
# turn and a horizontal reflection generate the dihedral group of order 8.
_ROT90 = tuple(3 * (2 - i % 3) + i // 3 for i in range(9))
_REFLECT = tuple(3 * (i // 3) + (2 - i % 3) for i in range(9))

OUTCOME_ENCODING = {"win": 1.0, "lose": -1.0, "tie": 0.0}


def board_winner(board) -> int:
    """+1 if crosses have a line, -1 for noughts, 0 otherwise."""
    for a, b, c in _LINES:
        if board[a] != 0 and board[a] == board[b] == board[c]:
            return int(board[a])
    return 0


def _endgame_boards() -> dict[tuple[int, ...], int]:
    """All terminal boards reachable with crosses moving first."""
    terminal: dict[tuple[int, ...], int] = {}
    seen: set[tuple[tuple[int, ...], int]] = set()

    def walk(board: tuple[int, ...], player: int) -> None:
        if (board, player) in seen:
            return
        seen.add((board, player))
        for cell in range(9):
            if board[cell] != 0:
                continue
            nxt = board[:cell] + (player,) + board[cell + 1 :]
            winner = board_winner(nxt)
            if winner != 0:
                terminal[nxt] = winner
            elif 0 not in nxt:
                terminal[nxt] = 0
            else:
                walk(nxt, -player)

    walk((0,) * 9, 1)
    return terminal


def generate_tictactoe() -> tuple[PointCloud, GroupAction]:
    """The 958 endgame boards as vectors in R^9 plus the dihedral-8 action.

    The outcome column is +1 when the first player (crosses) won, -1 when
    the second player won, 0 for a tie; rotations and reflections never
    change it.
    """
    terminal = _endgame_boards()
    boards = sorted(terminal)
    outcome = [float(terminal[b]) for b in boards]
    cloud = PointCloud(
        points=np.array(boards, dtype=np.float64),
        columns={"outcome": outcome},
        id="tictactoe",
        meta={"outcome_encoding": dict(OUTCOME_ENCODING)},
    )
    action = build_action_from_coordinate_maps(
        cloud,
        [lambda v: v[list(_ROT90)], lambda v: v[list(_REFLECT)]],
        tol=0.0,
    )
    return cloud, action


def load_tictactoe_uci(path) -> tuple[PointCloud, GroupAction]:
    """Load the public endgame CSV (cells as x/o/b); outcome is recomputed
    from the board, guarding against label-scheme mismatches."""
    symbol = {"x": 1, "o": -1, "b": 0}
    boards = []
    with open(path, newline="") as fh:
        for lineno, row in enumerate(csv.reader(fh), start=1):
            if not row:
                continue
            if len(row) < 9:
                raise RaggedRows(f"{path}: line {lineno}: expected 9 board cells")
            try:
                boards.append(tuple(symbol[c.strip().lower()] for c in row[:9]))
            except KeyError as exc:
                raise NonNumericCell(f"{path}: line {lineno}: bad cell {exc}") from None
    outcome = [float(board_winner(b)) for b in boards]
    cloud = PointCloud(
        points=np.array(boards, dtype=np.float64),
        columns={"outcome": outcome},
        id="tictactoe-uci",
        meta={"outcome_encoding": dict(OUTCOME_ENCODING)},
    )
    action = build_action_from_coordinate_maps(
        cloud,
        [lambda v: v[list(_ROT90)], lambda v: v[list(_REFLECT)]],
        tol=0.0,
    )
    return cloud, action


def circle_embedding(x: np.ndarray, y: np.ndarray) -> np.ndarray:
    """The degree-3 monomial embedding (xy, x^2, y^2, x^2 y, y^2 x, x^3, y^3)."""
    return np.column_stack([x * y, x**2, y**2, x**2 * y, y**2 * x, x**3, y**3])


def generate_cylinder(
    n_circle: int = 500, n_interval: int = 100, seed: int = 0
) -> tuple[PointCloud, PointCloud, Relation]:
    """Circle sample C in R^7, product C x L in R^8, and the projection.

    C samples the unit circle through `circle_embedding`; L samples the
    interval [0, 10] uniformly. The product pairs every circle point with
    every interval value, and the relation sends each product point to its
    circle factor, so fibers have exactly `n_interval` points. Both clouds
    carry the angle alpha = arccos(x) as a coloring column.
    """
    rng = np.random.default_rng(seed)
    theta = rng.uniform(0.0, 2.0 * np.pi, n_circle)
    x, y = np.cos(theta), np.sin(theta)
    base = circle_embedding(x, y)
    alpha = np.arccos(x)
    circle = PointCloud(
        points=base,
        columns={"alpha": alpha},
        id=f"circle7d:n{n_circle}:s{seed}",
    )
    heights = rng.uniform(0.0, 10.0, n_interval)
    product = np.column_stack(
        [np.repeat(base, n_interval, axis=0), np.tile(heights, n_circle)]
    )
    product_cloud = PointCloud(
        points=product,
        columns={
            "alpha": np.repeat(alpha, n_interval),
            "height": np.tile(heights, n_circle),
        },
        id=f"cylinder8d:n{n_circle}x{n_interval}:s{seed}",
    )
    pairs = np.stack(
        [np.arange(n_circle * n_interval), np.repeat(np.arange(n_circle), n_interval)],
        axis=1,
    )
    projection = relation_from_pairs(product_cloud, circle, pairs)
    return circle, product_cloud, projection


def _looks_numeric(cell: str) -> bool:
    try:
        float(cell)
        return True
    except ValueError:
        return False


def load_csv(
    path,
    cloud_id: str | None = None,
    coordinates=None,
    colorings=(),
    key: str | None = None,
    manifest=None,
) -> PointCloud:
    """Rectangular numeric CSV as a point cloud.

    A first row with any non-numeric cell is taken as a header. Column
    roles may name header columns (or give 0-based positions for
    headerless files): `colorings` become scalar columns, `key` is a
    coloring column additionally recorded as the join key for by-key
    relations, `coordinates` defaults to everything else. A `manifest`
    (path or mapping with keys "coordinates"/"colorings"/"key") provides
    the same roles as a file.
    """
    if manifest is not None:
        if not isinstance(manifest, dict):
            with open(manifest) as fh:
                manifest = json.load(fh)
        coordinates = manifest.get("coordinates", coordinates)
        colorings = manifest.get("colorings", colorings)
        key = manifest.get("key", key)
    with open(path, newline="") as fh:
        rows = [row for row in csv.reader(fh) if row]
    if not rows:
        raise RaggedRows(f"{path}: empty file")
    header = None
    if any(not _looks_numeric(c) for c in rows[0]):
        header = [c.strip() for c in rows[0]]
        rows = rows[1:]
    width = len(header) if header is not None else len(rows[0])

    def col_pos(name, role):
        if isinstance(name, int):
            if not 0 <= name < width:
                raise ValueError(f"{role} column index {name} out of range")
            return name
        if header is None:
            raise ValueError(f"{role} column {name!r} needs a header row")
        try:
            return header.index(name)
        except ValueError:
            raise ValueError(f"{role} column {name!r} not in header {header}") from None

    coloring_pos = [col_pos(c, "coloring") for c in colorings]
    key_pos = col_pos(key, "key") if key is not None else None
    if key_pos is not None and key_pos not in coloring_pos:
        coloring_pos.append(key_pos)
    if coordinates is not None:
        coord_pos = [col_pos(c, "coordinate") for c in coordinates]
    else:
        coord_pos = [j for j in range(width) if j not in coloring_pos]

    data = np.empty((len(rows), width))
    for i, row in enumerate(rows):
        if len(row) != width:
            line = i + 1 + (1 if header is not None else 0)
            raise RaggedRows(f"{path}: line {line}: {len(row)} cells, expected {width}")
        for j, cell in enumerate(row):
            try:
                data[i, j] = float(cell)
            except ValueError:
                line = i + 1 + (1 if header is not None else 0)
                raise NonNumericCell(
                    f"{path}: line {line}, column {j + 1}: {cell!r} is not a number"
                ) from None

    def col_name(j):
        return header[j] if header is not None else f"col{j}"

    columns = {col_name(j): data[:, j] for j in coloring_pos}
    meta = {}
    if key_pos is not None:
        meta["key_column"] = col_name(key_pos)
    return PointCloud(
        points=data[:, coord_pos],
        columns=columns,
        id=cloud_id if cloud_id is not None else str(path),
        meta=meta,
    )


def save_cloud_csv(cloud: PointCloud, path) -> None:
    """Write coordinates as x0..x{D-1} plus every coloring column."""
    names = list(cloud.columns)
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow([f"x{j}" for j in range(cloud.dim)] + names)
        for i in range(cloud.n_points):
            row = [repr(float(v)) for v in cloud.points[i]]
            row += [repr(float(cloud.columns[n][i])) for n in names]
            writer.writerow(row)


def save_action_csv(action: GroupAction, path, generators_only: bool = True) -> None:
    """One permutation per row (generators by default)."""
    perms = action.generators if generators_only else action.elements
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        for p in perms:
            writer.writerow(p.tolist())


def load_action_csv(path, cloud: PointCloud) -> GroupAction:
    with open(path, newline="") as fh:
        perms = [[int(c) for c in row] for row in csv.reader(fh) if row]
    return GroupAction.from_permutations(perms, cloud_id=cloud.id)


@dataclass(frozen=True)
class MappingDemo:
    """Four domain balls mapped onto three codomain balls.

    The first three domain balls each saturate one codomain ball and the
    fourth reaches all three, so the singleton fraction matrix is
    (1,0,0), (0,1,0), (0,0,1), (1,1,1). Domain vertices "0".."3" play the
    roles A..D, codomain vertices "0".."2" play J..L.
    """

    domain_cloud: PointCloud
    codomain_cloud: PointCloud
    domain_graph: CoverGraph
    codomain_graph: CoverGraph
    relation: Relation


def mapping_demo() -> MappingDemo:
    metric = Metric("euclidean")
    xs = PointCloud(
        points=np.array([[1.0], [2.0], [4.0], [5.0], [7.0], [8.0], [10.0], [11.0]]),
        columns={"group": [0, 0, 1, 1, 2, 2, 3, 3]},
        id="mapping-demo-domain",
    )
    ys = PointCloud(
        points=np.array([[1.0], [2.0], [4.0], [5.0], [7.0], [8.0]]),
        columns={"group": [0, 0, 1, 1, 2, 2]},
        id="mapping-demo-codomain",
    )
    gx = build_ball_mapper(xs, metric, greedy_net(xs, metric, 1.0), graph_id="demo-domain")
    gy = build_ball_mapper(ys, metric, greedy_net(ys, metric, 1.0), graph_id="demo-codomain")
    pairs = [(0, 0), (1, 1), (2, 2), (3, 3), (4, 4), (5, 5), (6, 0), (6, 2), (6, 4), (7, 1), (7, 3), (7, 5)]
    rel = relation_from_pairs(xs, ys, pairs)
    return MappingDemo(
        domain_cloud=xs,
        codomain_cloud=ys,
        domain_graph=gx,
        codomain_graph=gy,
        relation=rel,
    )
