class UnionFind:
    """Union-find with path compression.

    ``find`` returns the root; roots are not guaranteed to be the smallest
    member, callers that need deterministic ids renumber by first appearance.
    """

    def __init__(self, size: int):
        self.parent = list(range(size))

    def find(self, x: int) -> int:
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, a: int, b: int) -> None:
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            if ra < rb:
                self.parent[rb] = ra
            else:
                self.parent[ra] = rb

    def labels(self) -> list[int]:
        """Class id per element, numbered in order of first appearance."""
        ids: dict[int, int] = {}
        out = []
        for x in range(len(self.parent)):
            out.append(ids.setdefault(self.find(x), len(ids)))
        return out


class ParityUnionFind:
    """Union-find that also tracks a relative orientation bit per element."""

    def __init__(self, size: int):
        self.parent = list(range(size))
        self.parity = [0] * size
        self.conflicts: list[tuple[int, int]] = []

    def find(self, x: int) -> tuple[int, int]:
        path = []
        while self.parent[x] != x:
            path.append(x)
            x = self.parent[x]
        root = x
        # compress, accumulating parity from the top down
        acc = 0
        for node in reversed(path):
            acc ^= self.parity[node]
            self.parity[node] = acc
            self.parent[node] = root
        return root, (self.parity[path[0]] if path else 0)

    def union(self, a: int, b: int, flip: int) -> None:
        """Record that ``a`` and ``b`` are the same element up to ``flip``."""
        ra, pa = self.find(a)
        rb, pb = self.find(b)
        if ra == rb:
            if pa ^ pb != flip:
                self.conflicts.append((a, b))
            return
        if rb < ra:
            ra, rb, pa, pb = rb, ra, pb, pa
        self.parent[rb] = ra
        self.parity[rb] = pa ^ pb ^ flip
