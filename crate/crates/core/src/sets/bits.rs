//! Bit-mask helpers. A mask's bit `i` stands for world `i` of its universe.

pub type Mask = u32;

#[inline]
pub fn full(n: usize) -> Mask {
    if n >= 32 {
        Mask::MAX
    } else {
        (1 << n) - 1
    }
}

#[inline]
pub fn bit(i: usize) -> Mask {
    1 << i
}

#[inline]
pub fn subset(a: Mask, b: Mask) -> bool {
    a & !b == 0
}

/// Worlds in a mask, lowest index first.
pub fn members(mut m: Mask) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if m == 0 {
            None
        } else {
            let i = m.trailing_zeros() as usize;
            m &= m - 1;
            Some(i)
        }
    })
}

fn reverse(m: Mask, n: usize) -> Mask {
    if n == 0 {
        0
    } else {
        m.reverse_bits() >> (32 - n)
    }
}

/// All `2^n` masks in canonical enumeration order: the membership vector read
/// with world 0 as the most significant position, counted upwards. For
/// `n = 3` this is `∅, {w3}, {w2}, {w2,w3}, {w1}, ...`.
pub fn canonical_order(n: usize) -> Vec<Mask> {
    (0..(1u32 << n)).map(|k| reverse(k, n)).collect()
}

/// Position of every mask within [`canonical_order`].
pub fn canonical_rank(n: usize) -> Vec<u32> {
    let mut rank = vec![0; 1 << n];
    for (pos, m) in canonical_order(n).into_iter().enumerate() {
        rank[m as usize] = pos as u32;
    }
    rank
}

/// Every subset of `m`, including `∅` and `m`.
pub fn subsets(m: Mask) -> impl Iterator<Item = Mask> {
    let mut next = Some(0 as Mask);
    std::iter::from_fn(move || {
        let cur = next?;
        next = if cur == m { None } else { Some(((cur | !m).wrapping_add(1)) & m) };
        Some(cur)
    })
}

/// Every pair `(a, b)` with `a ∪ b = m` (there are `3^|m|` of them).
pub fn covering_pairs(m: Mask) -> impl Iterator<Item = (Mask, Mask)> {
    subsets(m).flat_map(move |a| subsets(a).map(move |common| (a, (m & !a) | common)))
}
