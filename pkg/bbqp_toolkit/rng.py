"""
Seeded random streams shared by the start generators and instance families.

Every stream is a PCG64 generator keyed by a 64-bit seed; negative seeds are
taken modulo 2**64 so that any signed 64-bit value is accepted.
"""
import numpy as np

SEED_MASK = (1 << 64) - 1
TWO_64 = float(1 << 64)


def make_generator(seed):
    return np.random.Generator(np.random.PCG64(int(seed) & SEED_MASK))


def ran(generator, low, high, size):
    """
    Uniform draws from the half-open interval (low, high].

    One raw 64-bit word u per draw, mapped to low + (high - low) * (u + 1) / 2**64.
    """
    raw = generator.bit_generator.random_raw(size)
    unit = (np.asarray(raw, dtype=np.float64) + 1.0) / TWO_64
    values = low + (high - low) * unit
    # (u + 1) / 2**64 can round low + tiny back onto low
    return np.clip(values, np.nextafter(low, high), high)
