"""Pure-Python kernels. Same signatures as the compiled ``_speedups`` module.

Node ids are plain ints here; bit 0 is the least significant bit.
"""

FNV_OFFSET = 0xCBF29CE484222325
FNV_PRIME = 0x100000001B3
_MASK64 = (1 << 64) - 1


def fnv1a64(data: bytes) -> int:
    h = FNV_OFFSET
    for byte in data:
        h ^= byte
        h = (h * FNV_PRIME) & _MASK64
    return h


def popcount(x: int) -> int:
    return x.bit_count()


def hamming(u: int, v: int) -> int:
    return (u ^ v).bit_count()


def greedy_path(start: int, target: int) -> list[int]:
    """Greedy Hamming route; each hop clears the lowest differing bit."""
    path = [start]
    cur = start
    diff = cur ^ target
    while diff:
        low = diff & -diff
        cur ^= low
        diff ^= low
        path.append(cur)
    return path


def free_positions(root: int, r: int) -> list[int]:
    return [i for i in range(r) if not (root >> i) & 1]


def sbt_children(root: int, v: int, r: int) -> list[int]:
    # v must contain root; caller checks.
    free = free_positions(root, r)
    children = []
    for pos in free:
        if (v >> pos) & 1:
            break
        children.append(v | (1 << pos))
    return children


def sbt_preorder(root: int, r: int) -> list[int]:
    free = free_positions(root, r)
    order: list[int] = []

    def visit(v: int) -> None:
        order.append(v)
        for pos in free:
            if (v >> pos) & 1:
                break
            visit(v | (1 << pos))

    visit(root)
    return order
