"""Pure-Python rule-table kernels.

Mirrors the Cython ``_ckernels`` module bit for bit; used when the extension
is not built, when the language exceeds 64 atoms, or when ``MINANS_PURE=1``.
"""


class RuleTable:
    """Rules packed as three parallel lists of atom bitmasks."""

    backend = "python"

    def __init__(self, antec, negb, head):
        self.antec = list(antec)
        self.negb = list(negb)
        self.head = list(head)
        self.size = len(self.head)

    def first_violated(self, pos, neg, start=0):
        antec, negb, head = self.antec, self.negb, self.head
        for i in range(start, self.size):
            h = head[i]
            if h & pos == h and not antec[i] & pos and not negb[i] & neg:
                return i
        return -1

    def is_model(self, m):
        antec, negb, head = self.antec, self.negb, self.head
        for i in range(self.size):
            a = antec[i]
            if a & m == a and not negb[i] & m and not head[i] & m:
                return False
        return True

    def is_reduct_model(self, m, against):
        # model of the reduct taken w.r.t. `against`, i.e. rules with negb ∩ against = ∅
        antec, negb, head = self.antec, self.negb, self.head
        for i in range(self.size):
            a = antec[i]
            if not negb[i] & against and a & m == a and not head[i] & m:
                return False
        return True

    def models(self, n):
        return [m for m in range(1 << n) if self.is_model(m)]

    def stable_models(self, n):
        out = []
        for m in range(1 << n):
            if not self.is_model(m):
                continue
            # enumerate proper submasks of m
            sub = (m - 1) & m
            stable = True
            while True:
                if sub != m and self.is_reduct_model(sub, m):
                    stable = False
                    break
                if sub == 0:
                    break
                sub = (sub - 1) & m
            if stable:
                out.append(m)
        return out


def minimal_masks(masks):
    """Return the ⊆-minimal elements of `masks`, sorted ascending."""
    keep = []
    for m in sorted(set(masks), key=lambda x: (bin(x).count("1"), x)):
        if not any(k & m == k for k in keep):
            keep.append(m)
    return sorted(keep)
