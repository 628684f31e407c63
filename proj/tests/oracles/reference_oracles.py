#!/usr/bin/env python3
"""Independent reference values frozen into the C++ tests.

Everything here is computed without touching the C++ code: hashlib for MD5,
the `cryptography` package for AES, a generator-based recursive pebbler for
the reversed chains, and plain Fraction arithmetic for the recurrences.
"""
import hashlib
import itertools
from fractions import Fraction as Fr

from cryptography.hazmat.primitives.ciphers import Cipher, algorithms, modes


def md5(x):
    return hashlib.md5(x).digest()


def aes_zero_block(key):
    enc = Cipher(algorithms.AES(key), modes.ECB()).encryptor()
    return enc.update(bytes(16)) + enc.finalize()


tR = lambda k, r: 0 if r < 2**k - 1 else 2**k - 1
t1 = lambda k, r: 1
t2 = lambda k, r: 0 if r < 2**(k - 1) else 2 if r < 2**k - 1 else 1
tS = lambda k, r: 0 if r < 2**(k - 1) else ((k + r) % 2 + k + 1 - ((2 * r) % 2**(2**k - r).bit_length()).bit_length()) // 2


def pebbler(t, k, x, counter):
    y = [None] * k + [x]
    i = k
    g = 0
    for r in range(1, 2**k):
        for _ in range(t(k, r)):
            z = y[i]
            if g == 0:
                i -= 1
                g = 2**i
            y[i] = md5(z)
            counter[0] += 1
            g -= 1
        yield None
    yield y[0]
    for v in itertools.zip_longest(*(pebbler(t, i - 1, y[i], counter) for i in range(1, k + 1))):
        yield next(filter(None, v))


def work_by_simulation(t, k):
    counter = [0]
    out = []
    last = 0
    for _ in pebbler(t, k, md5(b''), counter):
        out.append(counter[0] - last)
        last = counter[0]
    return out[2**k:]


def work_recurrence(t, k):
    if k == 0:
        return []
    w = work_recurrence(t, k - 1)
    sched = [t(k - 1, r) for r in range(1, 2**(k - 1))]
    return [a + b for a, b in zip(sched, w)] + [0] + w


def unrounded(k):
    if k == 1:
        return [Fr(1)]
    if k == 0:
        return []
    return [Fr(0)] * (2**(k - 1) - 1) + [Fr(k + 1 - ((2 * r) % 2**(2**k - r).bit_length()).bit_length(), 2)
                                          for r in range(2**(k - 1), 2**k)]


def work_half(k):
    if k == 0:
        return []
    w = work_half(k - 1)
    return [a + b for a, b in zip(unrounded(k - 1), w)] + [Fr(0)] + w


if __name__ == '__main__':
    seed = md5(b'')
    print('default md5 seed', seed.hex())
    print('md5(seed)', md5(seed).hex())
    print('aes zero/zero', aes_zero_block(bytes(16)).hex())
    print('aes seed key', aes_zero_block(seed).hex())
    for name, t in (('rushing', tR), ('speed1', t1), ('speed2', t2), ('optimal', tS)):
        print(name, 'W4 sim', work_by_simulation(t, 4))
        print(name, 'W4 rec', work_recurrence(t, 4))
    outs = [v.hex() for v in pebbler(tS, 4, seed, [0]) if v]
    print('md5 optimal k=4 first', outs[0], 'last', outs[-1], 'count', len(outs))
    print('md5 optimal k=4 all', outs)
    print('Whalf3', [str(v) for v in work_half(3)])
    print('sum unrounded 6', sum(unrounded(6)))
