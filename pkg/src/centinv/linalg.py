"""Exact sparse Gaussian elimination.

Rows are dicts ``column -> nonzero scalar``.  Columns may be any mutually
comparable hashable keys.  Nothing here ever touches floating point.
"""


class Echelon:
    """Incrementally maintained reduced row echelon form."""

    def __init__(self, field):
        self.field = field
        self.pivots = {}  # pivot column -> row with a 1 in that column

    @property
    def rank(self):
        return len(self.pivots)

    def reduce(self, row):
        F = self.field
        out = {c: v for c, v in row.items() if v != 0}
        for c in [c for c in out if c in self.pivots]:
            a = out.get(c)
            if not a:
                continue
            for k, v in self.pivots[c].items():
                w = F.norm(out.get(k, 0) - a * v)
                if w:
                    out[k] = w
                else:
                    out.pop(k, None)
        return out

    def add(self, row):
        """Insert ``row``; return True when it was independent."""
        F = self.field
        r = self.reduce(row)
        if not r:
            return False
        c = min(r)
        inv = F.inv(r[c])
        r = {k: F.norm(v * inv) for k, v in r.items()}
        for prow in self.pivots.values():
            a = prow.get(c)
            if a:
                for k, v in r.items():
                    w = F.norm(prow.get(k, 0) - a * v)
                    if w:
                        prow[k] = w
                    else:
                        prow.pop(k, None)
        self.pivots[c] = r
        return True

    def contains(self, row):
        return not self.reduce(row)


def rank(rows, field):
    ech = Echelon(field)
    for r in rows:
        ech.add(r)
    return ech.rank


def nullspace(rows, columns, field):
    """Basis of ``{x : sum_c row[c] x[c] = 0 for every row}``.

    ``columns`` fixes the ambient coordinates; the basis is returned in the
    order of the free columns within ``columns``.
    """
    ech = Echelon(field)
    for r in rows:
        ech.add(r)
    basis = []
    for f in columns:
        if f in ech.pivots:
            continue
        vec = {f: field(1)}
        for c, prow in ech.pivots.items():
            a = prow.get(f)
            if a:
                vec[c] = field.norm(-a)
        basis.append(vec)
    return basis


def transpose(rows):
    """Column dicts of a list of row dicts (row index -> value)."""
    cols = {}
    for i, r in enumerate(rows):
        for c, v in r.items():
            cols.setdefault(c, {})[i] = v
    return cols
