"""Tests for tree literals, caterpillars and realized trees."""

import unittest

import networkx as nx
import numpy as np
from hypothesis import given, settings
from hypothesis import strategies as st

from laplimits import (
    DomainError,
    LinearTree,
    MatrixKind,
    RootedTree,
    Starlike,
    TreeSyntaxError,
    format_linear_tree,
    is_subtree_step,
    parse_linear_tree,
    realize,
)
from laplimits.tree_model import from_caterpillar, parse_star, replace_star

stars = st.lists(st.integers(min_value=1, max_value=4), max_size=3).map(
    lambda lengths: Starlike(path_lengths=tuple(lengths))
)
linear_trees = st.lists(stars, min_size=1, max_size=6).map(LinearTree.of)


class TestParse(unittest.TestCase):
    def test_parse_example(self):
        g = parse_linear_tree("[[1,1,1],[1],[0],[1,1],[1,1]]")
        self.assertEqual(g.length, 5)
        self.assertEqual([star.width for star in g.stars], [3, 1, 0, 2, 2])
        self.assertEqual(g.vertex_count, 14)
        self.assertTrue(g.is_caterpillar)
        self.assertEqual(g.caterpillar_counts(), [3, 1, 0, 2, 2])

    def test_paths_are_sorted(self):
        g = parse_linear_tree(" [ [2, 1], [0] ] ")
        self.assertEqual(g.stars[0], Starlike.of(1, 2))
        self.assertEqual(str(g), "[[1,2],[0]]")
        self.assertFalse(g.is_caterpillar)
        with self.assertRaises(ValueError):
            g.caterpillar_counts()

    def test_repeat(self):
        g = parse_linear_tree("[[0]^3,[1],[1,1]^2]")
        self.assertEqual(g.length, 6)
        self.assertEqual(format_linear_tree(g), "[[0],[0],[0],[1],[1,1],[1,1]]")
        self.assertEqual(format_linear_tree(g, compress=True), "[[0]^3,[1],[1,1]^2]")

    def test_caterpillar_shorthand(self):
        g = parse_linear_tree("[3,1,1,2]", caterpillar=True)
        self.assertEqual(g, from_caterpillar([3, 1, 1, 2]))
        self.assertEqual(g.stars[0], Starlike.of(1, 1, 1))

    def test_parse_star(self):
        self.assertEqual(parse_star("[0]"), Starlike())
        self.assertEqual(str(parse_star("[3,1]")), "[1,3]")

    def test_zero_mixed_with_paths(self):
        with self.assertRaises(TreeSyntaxError) as ctx:
            parse_linear_tree("[[1,0]]")
        self.assertEqual(ctx.exception.position, 2)

    def test_unclosed_literal(self):
        with self.assertRaises(TreeSyntaxError) as ctx:
            parse_linear_tree("[[1],[2]")
        self.assertEqual(ctx.exception.position, 8)
        self.assertIn("end of input", str(ctx.exception))

    def test_trailing_text(self):
        with self.assertRaises(TreeSyntaxError) as ctx:
            parse_linear_tree("[[1]] x")
        self.assertEqual(ctx.exception.position, 6)

    def test_offset_shifts_positions(self):
        with self.assertRaises(TreeSyntaxError) as ctx:
            parse_linear_tree("[[1],]", offset=10)
        self.assertEqual(ctx.exception.position, 15)

    def test_rejects_bad_entries(self):
        for text in ("[]", "[[1]^0]", "[[-1]]", "[[1000001]]", "[[a]]"):
            with self.subTest(text=text):
                with self.assertRaises(TreeSyntaxError):
                    parse_linear_tree(text)


class TestCaterpillar(unittest.TestCase):
    def test_rejects_negative_counts(self):
        with self.assertRaises(DomainError):
            from_caterpillar([2, -1])
        with self.assertRaises(DomainError):
            from_caterpillar([])

    def test_replace_star(self):
        g = from_caterpillar([1, 1, 1])
        h = replace_star(g, 2, Starlike.of(1, 1))
        self.assertEqual(h.caterpillar_counts(), [1, 2, 1])
        with self.assertRaises(DomainError):
            replace_star(g, 4, Starlike())


class TestRealize(unittest.TestCase):
    def test_numbering(self):
        t = realize(parse_linear_tree("[[1],[1,2]]"))
        self.assertEqual(t.parents, (1, 5, 5, 4, 5, -1))
        self.assertEqual(t.degrees(), [1, 2, 1, 1, 2, 3])
        self.assertEqual(t.diagonal, (1, 2, 1, 1, 2, 3))
        self.assertEqual(t.weights, (-1, -1, -1, -1, -1, 0))
        self.assertEqual(t.back_nodes, (1, 5))

    def test_adjacency_entries(self):
        t = realize(parse_linear_tree("[[1],[0]]"), MatrixKind.ADJACENCY)
        self.assertEqual(t.diagonal, (0, 0, 0))
        self.assertEqual(t.weights, (1, 1, 0))

    def test_dense_laplacian(self):
        matrix = realize(parse_linear_tree("[[1,1]]")).to_dense()
        expected = np.array([[1, 0, -1], [0, 1, -1], [-1, -1, 2]], dtype=float)
        np.testing.assert_array_equal(matrix, expected)

    @given(linear_trees)
    @settings(max_examples=50, deadline=None)
    def test_realized_tree_is_a_tree(self, g):
        t = realize(g)
        self.assertEqual(t.size, g.vertex_count)
        self.assertEqual(sum(t.degrees()), 2 * (t.size - 1))
        graph = nx.Graph(t.edges())
        graph.add_nodes_from(range(t.size))
        self.assertTrue(nx.is_tree(graph))
        # back nodes form the main path
        for a, b in zip(t.back_nodes, t.back_nodes[1:]):
            self.assertEqual(t.parents[a], b)

    def test_from_graph(self):
        graph = nx.star_graph(3)
        t = RootedTree.from_graph(graph, root=0)
        self.assertEqual(t.root, 3)
        self.assertEqual(sorted(t.degrees()), [1, 1, 1, 3])
        with self.assertRaises(ValueError):
            RootedTree.from_graph(nx.cycle_graph(4))

    def test_elimination_order_is_validated(self):
        with self.assertRaises(ValueError):
            RootedTree(parents=(-1, 0), diagonal=(1, 1), weights=(0, -1))


class TestSubtreeStep(unittest.TestCase):
    def test_prefix_extension(self):
        g = parse_linear_tree("[[1],[1]]")
        self.assertTrue(is_subtree_step(g, parse_linear_tree("[[1],[1],[0]]")))
        self.assertTrue(is_subtree_step(g, parse_linear_tree("[[1,1],[2],[0]]")))
        self.assertFalse(is_subtree_step(g, parse_linear_tree("[[0],[1],[0]]")))

    def test_last_star_continues_along_the_path(self):
        self.assertTrue(
            is_subtree_step(parse_linear_tree("[[1,1]]"), parse_linear_tree("[[1],[0]]"))
        )
        self.assertTrue(
            is_subtree_step(parse_linear_tree("[[1,3]]"), parse_linear_tree("[[1],[2]]"))
        )
        self.assertFalse(
            is_subtree_step(parse_linear_tree("[[1,1,1]]"), parse_linear_tree("[[1],[0]]"))
        )

    def test_length_mismatch(self):
        with self.assertRaises(DomainError):
            is_subtree_step(parse_linear_tree("[[1]]"), parse_linear_tree("[[1]]"))


if __name__ == "__main__":
    unittest.main()
