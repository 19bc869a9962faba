import hashlib
import random

import pytest

from lazydigest.applications import (
    find_pow,
    gather,
    leading_zero_bits,
    memory_hard_kdf,
    pow_candidate,
    test_stream as make_test_stream,
    verify_pow,
)
from lazydigest.constructions import LazyDigest
from lazydigest.errors import DomainError
from lazydigest.hash_backend import count_calls

from conftest import CountingDigest


class TestTestStream:
    def test_reproducible(self):
        a = make_test_stream("unit_test_1").truncate(1024)
        b = make_test_stream("unit_test_1").truncate(1024)
        assert a == b and len(a) == 1024

    def test_seed(self):
        assert make_test_stream("unit_test_1").seed.hex() == (
            "71e168ee6161c7815bd14a38d7b39d12fd390ad1b0ad2256a4d101855a58e405"
        )

    def test_distinct_ids(self):
        assert make_test_stream("a").read(0, 64) != make_test_stream("b").read(0, 64)

    def test_empty_id(self):
        with pytest.raises(DomainError):
            make_test_stream("")


class TestKdf:
    def test_deterministic(self):
        assert memory_hard_kdf(b"pw", b"salt", 100) == memory_hard_kdf(b"pw", b"salt", 100)
        assert len(memory_hard_kdf(b"pw", b"salt", 1)) == 32

    @pytest.mark.parametrize("cost", [1, 2, 3, 64, 1000])
    def test_access_count(self, cost):
        stream = CountingDigest(LazyDigest(b"seed"))
        assert len(gather(stream, cost)) == cost
        assert stream.gets == cost
        with count_calls() as counter:
            memory_hard_kdf(b"pw", b"salt", cost)
        assert counter.calls == cost

    def test_walk_rule(self):
        stream = LazyDigest(b"seed")
        cost = 50
        position, expected = 0, []
        for _ in range(cost):
            value = stream.get(position)
            expected.append(value)
            position = (position * 256 + value) % (cost * 64)
        assert gather(stream, cost) == bytes(expected)

    def test_output_is_hash_of_gathered_bytes(self):
        seed = hashlib.sha256(b"pw" + b"salt").digest()
        gathered = gather(LazyDigest(seed), 20)
        assert memory_hard_kdf(b"pw", b"salt", 20) == hashlib.sha256(gathered).digest()

    def test_salt_bit_flip(self):
        base = memory_hard_kdf(b"pw", b"\x00\x01", 32)
        assert memory_hard_kdf(b"pw", b"\x00\x03", 32) != base

    def test_rejects_empty_salt_and_zero_cost(self):
        with pytest.raises(DomainError):
            memory_hard_kdf(b"pw", b"", 10)
        with pytest.raises(DomainError):
            memory_hard_kdf(b"pw", b"s", 0)


class TestLeadingZeros:
    @pytest.mark.parametrize(
        "data, expected",
        [(b"\xff" * 4, 0), (b"\x00\xff", 8), (b"\x0f\xaa", 4), (b"\x01", 7), (b"\x00\x00", 16)],
    )
    def test_values(self, data, expected):
        assert leading_zero_bits(data) == expected

    def test_empty(self):
        with pytest.raises(DomainError):
            leading_zero_bits(b"")


class TestPow:
    def test_difficulty_zero(self):
        result = find_pow(b"\x00", 0)
        assert (result.nonce, result.attempts) == (0, 1)

    def test_candidate_construction(self):
        base = hashlib.sha256(b"header").digest()
        assert pow_candidate(b"header", 258) == hashlib.sha256(base + b"\x00\x00\x01\x02").digest()

    def test_returns_lowest_nonce(self):
        header = b"block 17"
        result = find_pow(header, 6)
        assert result.found and result.attempts == result.nonce + 1
        assert leading_zero_bits(result.candidate) >= 6
        assert verify_pow(header, result.nonce, 6)
        assert not any(verify_pow(header, n, 6) for n in range(result.nonce))

    def test_not_found(self):
        result = find_pow(b"x", 64, max_nonce=99)
        assert result.nonce is None and result.attempts == 100 and not result.found

    def test_difficulty_bounds(self):
        with pytest.raises(DomainError):
            find_pow(b"x", 257)
        with pytest.raises(DomainError):
            find_pow(b"x", -1)
        with pytest.raises(DomainError):
            find_pow(b"x", 1, max_nonce=2**32)

    def test_mean_attempts_small_sample(self):
        rng = random.Random(4)
        attempts = [find_pow(rng.randbytes(16), 4).attempts for _ in range(200)]
        # geometric with p = 1/16: mean 16, sd of the sample mean about 1.1
        assert 11 < sum(attempts) / len(attempts) < 21
