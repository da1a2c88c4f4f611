from math import comb


class Numerology:
    """Counting identities for neighborly members with stacked vertex links."""

    @staticmethod
    def dual_nodes(n, d):
        """Facets: n(n - d) / (d + 1)."""
        return n * (n - d) // (d + 1)

    @staticmethod
    def dual_edges(n, d):
        """Dual edges: n(n - d - 1) / d."""
        return n * (n - d - 1) // d

    @staticmethod
    def tree_size(n, d):
        """Facets through each vertex."""
        return n - d

    @staticmethod
    def tree_intersections(n, d):
        return Numerology.tree_size(n, d) + d

    @staticmethod
    def tight_sides(n, d, beta1):
        return comb(n - d - 1, 2), comb(d + 2, 2) * beta1

    @staticmethod
    def vertex_bound_for_trees(m, d):
        """A pure d-complex whose dual is a tree on m facets has <= m + d vertices."""
        return m + d
