import numpy as np
import pytest
from hypothesis import given, strategies as st

import kmerscan as ks
from kmerscan.alphabet import BYTE_CODES, DROP, OTHER, encode_bytes


class TestAlphabet:
    def test_byte_classification_exhaustive(self):
        for byte in range(256):
            ch = chr(byte)
            code = BYTE_CODES[byte]
            if ch.lower() in "acgt":
                assert code == "acgt".index(ch.lower())
            elif byte in b" \t\r\n":
                assert code == DROP
            else:
                assert code == OTHER

    def test_encode_drops_whitespace(self):
        assert encode_bytes(b"a c\tg\nt\r").tolist() == [0, 1, 2, 3]

    def test_encode_maps_ambiguity_to_other(self):
        assert ks.encode("acgtNnxu7").tolist() == [0, 1, 2, 3, 4, 4, 4, 4, 4]

    def test_non_ascii_becomes_other(self):
        assert ks.encode("aég").tolist() == [0, OTHER, 2]

    def test_decode_round_trip(self):
        codes = ks.encode("acgtn")
        assert ks.decode(codes) == "acgt?"

    def test_table_immutable(self):
        with pytest.raises(ValueError):
            BYTE_CODES[0] = 0


class TestLoading:
    def test_detect_format(self):
        assert ks.detect_format("genome.fa") == "fasta"
        assert ks.detect_format("GENOME.FASTA") == "fasta"
        assert ks.detect_format("genome.txt") == "raw"
        assert ks.detect_format("fasta") == "raw"

    def test_fasta_drops_headers(self, tmp_path):
        p = tmp_path / "x.fa"
        p.write_bytes(b">chr1 test\nacgt\nACGT\n>chr2\nnn\n")
        seq = ks.load_sequence(p, "fasta")
        assert seq.symbols.tolist() == [0, 1, 2, 3, 0, 1, 2, 3, 4, 4]
        assert seq.source_name == str(p)

    def test_raw_keeps_header_bytes_as_other(self, tmp_path):
        p = tmp_path / "x.txt"
        p.write_bytes(b">a\ncg\n")
        seq = ks.load_sequence(p, "raw")
        # '>' survives as OTHER in raw mode; newlines are dropped either way
        assert seq.symbols.tolist() == [OTHER, 0, 1, 2]

    def test_empty_file(self, tmp_path):
        p = tmp_path / "e.fa"
        p.write_bytes(b"")
        assert ks.load_sequence(p).length == 0

    def test_unknown_format_rejected(self, tmp_path):
        p = tmp_path / "x.txt"
        p.write_bytes(b"acgt")
        with pytest.raises(ValueError):
            ks.load_sequence(p, "fastq")

    def test_sequence_from_text(self):
        seq = ks.sequence_from_text("ac gt")
        assert seq.length == 4
        assert seq.source_name == "<text>"

    def test_symbols_read_only(self):
        seq = ks.sequence_from_text("acgt")
        with pytest.raises(ValueError):
            seq.symbols[0] = 3


class TestChunkPlanning:
    def test_even_split(self):
        plan = ks.plan_chunks(ks.sequence_from_text("acgtacgt"), 4)
        assert plan.worker_count == 4
        assert plan.bounds == ((0, 2), (2, 4), (4, 6), (6, 8))

    def test_remainder_goes_to_last(self):
        plan = ks.plan_chunks(ks.sequence_from_text("acgtacgtac"), 4)
        assert plan.bounds == ((0, 2), (2, 4), (4, 6), (6, 10))

    def test_workers_clamped_to_length(self):
        plan = ks.plan_chunks(ks.sequence_from_text("acg"), 16)
        assert plan.worker_count == 3
        assert plan.bounds == ((0, 1), (1, 2), (2, 3))

    def test_empty_sequence_single_empty_chunk(self):
        plan = ks.plan_chunks(ks.sequence_from_text(""), 7)
        assert plan.worker_count == 1
        assert plan.bounds == ((0, 0),)
        assert plan.boundary_symbols == (None,)

    def test_boundary_symbols(self):
        plan = ks.plan_chunks(ks.sequence_from_text("acgtn"), 2)
        # chunks [0,2) and [2,5): border pair is (c, g)
        assert plan.boundary_symbols == (None, (1, 2))

    def test_invalid_worker_count(self):
        with pytest.raises(ValueError):
            ks.plan_chunks(ks.sequence_from_text("acgt"), 0)

    @given(st.integers(0, 500), st.integers(1, 40), st.randoms())
    def test_partition_invariants(self, n, workers, rnd):
        text = "".join(rnd.choice("acgtn") for _ in range(n))
        seq = ks.sequence_from_text(text)
        plan = ks.plan_chunks(seq, workers)
        assert 1 <= plan.worker_count <= workers
        assert plan.bounds[0][0] == 0
        assert plan.bounds[-1][1] == n
        for (a0, a1), (b0, b1) in zip(plan.bounds, plan.bounds[1:]):
            assert a1 == b0
            assert a1 > a0  # non-empty except the degenerate empty input
        if n > 0:
            sizes = [hi - lo for lo, hi in plan.bounds]
            # floor split: all but the last chunk share one size
            assert len(set(sizes[:-1])) <= 1
            assert sizes[-1] >= sizes[0]
        for i in range(1, plan.worker_count):
            prev_last, first = plan.boundary_symbols[i]
            lo = plan.bounds[i][0]
            assert prev_last == seq.symbols[lo - 1]
            assert first == seq.symbols[lo]
