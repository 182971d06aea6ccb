"""Unit tests for Huffman tree construction."""

import numpy as np
import pytest

from src.errors import DegenerateVocabularyError
from src.sgns import build_huffman


class TestBuildHuffman:
    """Tests for codes, paths and tie-breaking."""

    def test_two_leaves(self) -> None:
        tree = build_huffman([3, 7])
        assert tree.codes[0].tolist() == [0]
        assert tree.codes[1].tolist() == [1]
        assert tree.points[0].tolist() == [0]
        assert tree.points[1].tolist() == [0]

    def test_hand_built_three_leaves(self) -> None:
        tree = build_huffman([5, 1, 1])
        assert tree.code_lengths().tolist() == [1, 2, 2]
        assert tree.codes[0].tolist() == [1]
        assert tree.codes[1].tolist() == [0, 0]
        assert tree.codes[2].tolist() == [0, 1]
        # root is the last merge
        assert all(p[0] == 1 for p in tree.points)
        assert tree.weighted_length([5, 1, 1]) == 9.0

    def test_equal_frequencies_break_ties_on_node_id(self) -> None:
        tree = build_huffman([1, 1, 1, 1])
        assert tree.code_lengths().tolist() == [2, 2, 2, 2]
        assert [c.tolist() for c in tree.codes] == [[0, 0], [0, 1], [1, 0], [1, 1]]

    def test_frequent_nodes_get_shorter_codes(self) -> None:
        freqs = np.array([50, 1, 2, 4, 8, 16])
        lengths = build_huffman(freqs).code_lengths()
        assert lengths[0] == lengths.min()
        assert lengths[1] == lengths.max()

    def test_codes_are_prefix_free(self) -> None:
        tree = build_huffman([3, 9, 1, 1, 4, 7, 2])
        words = ["".join(map(str, c.tolist())) for c in tree.codes]
        for a in words:
            for b in words:
                assert a == b or not b.startswith(a)

    def test_paths_cover_internal_nodes(self) -> None:
        tree = build_huffman([2, 3, 5, 7, 11])
        assert tree.num_internal == 4
        assert set(np.concatenate(tree.points).tolist()) == set(range(4))

    def test_zero_frequency_leaves_are_allowed(self) -> None:
        tree = build_huffman([0, 4, 0])
        assert tree.num_leaves == 3

    def test_deterministic(self) -> None:
        freqs = np.random.default_rng(0).integers(1, 10, size=20)
        a, b = build_huffman(freqs), build_huffman(freqs)
        assert all(np.array_equal(x, y) for x, y in zip(a.codes, b.codes))

    @pytest.mark.parametrize("freqs", [[], [4], [0, 0], [1, -1], [1.0, float("nan")]])
    def test_degenerate_input(self, freqs: list[float]) -> None:
        with pytest.raises(DegenerateVocabularyError):
            build_huffman(freqs)
