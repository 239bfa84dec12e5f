"""Tests for models.oracles."""
import networkx as nx
import numpy as np
from absl.testing import absltest
from absl.testing import parameterized

from models import oracles
from models.errors import DisconnectedInput


class KnownGraphsTest(parameterized.TestCase):

    @parameterized.named_parameters(
        ('single_vertex', nx.empty_graph(1), True),
        ('edge', nx.path_graph(2), True),
        ('path', nx.path_graph(7), True),
        ('star', nx.star_graph(5), True),
        ('complete', nx.complete_graph(5), True),
        ('tree', nx.balanced_tree(2, 3), True),
        ('square', nx.cycle_graph(4), False),
        ('pentagon', nx.cycle_graph(5), False),
        ('wheel', nx.wheel_graph(6), True),
        ('petersen', nx.petersen_graph(), False),
    )
    def test_both_characterisations(self, graph, copwin):
        self.assertEqual(oracles.is_dismantlable(graph), copwin)
        self.assertEqual(oracles.copwin_bruteforce(graph), copwin)

    def test_disconnected_rejected(self):
        graph = nx.Graph()
        graph.add_nodes_from([0, 1])
        with self.assertRaises(DisconnectedInput):
            oracles.copwin_bruteforce(graph)

    def test_empty_rejected(self):
        with self.assertRaises(ValueError):
            oracles.is_dismantlable(nx.Graph())
        with self.assertRaises(ValueError):
            oracles.copwin_bruteforce(nx.Graph())

    def test_size_limit(self):
        with self.assertRaises(ValueError):
            oracles.copwin_bruteforce(nx.path_graph(oracles.MAX_BRUTEFORCE_N + 1))


class RandomGeometricTest(absltest.TestCase):

    def test_random_graphs_agree(self):
        rng = np.random.default_rng(12)
        for _ in range(50):
            n = int(rng.integers(2, 13))
            graph = oracles.random_connected_rgg(n, float(rng.uniform(0.3, 0.6)), rng)
            self.assertTrue(nx.is_connected(graph))
            self.assertEqual(graph.number_of_nodes(), n)
            self.assertEqual(oracles.is_dismantlable(graph), oracles.copwin_bruteforce(graph))

    def test_unreachable_connectivity(self):
        rng = np.random.default_rng(0)
        with self.assertRaises(DisconnectedInput):
            oracles.random_connected_rgg(30, 0.01, rng, attempts=3)


if __name__ == '__main__':
    absltest.main()
