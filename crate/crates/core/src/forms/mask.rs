//! Strictly increasing multi-indices as bit sets: bit `a` stands for `dx^a`.

pub type Mask = u16;

pub fn single(a: usize) -> Mask {
    1 << a
}

pub fn degree(m: Mask) -> usize {
    m.count_ones() as usize
}

pub fn fits(m: Mask, dim: usize) -> bool {
    dim >= 16 || m >> dim == 0
}

/// All masks of the given degree in `dim` coordinates, ascending.
pub fn of_degree(dim: usize, k: usize) -> impl Iterator<Item = Mask> {
    (0..(1u32 << dim)).map(|m| m as Mask).filter(move |m| degree(*m) == k)
}

/// All masks in `dim` coordinates.
pub fn all(dim: usize) -> impl Iterator<Item = Mask> {
    (0..(1u32 << dim)).map(|m| m as Mask)
}

/// `dx^A ∧ dx^B = ±dx^{A∪B}`; `None` when the index sets overlap.
/// The flag is true for a minus sign.
pub fn wedge(a: Mask, b: Mask) -> Option<(Mask, bool)> {
    if a & b != 0 {
        return None;
    }
    // one transposition per pair (i in A, j in B) with i > j
    let mut swaps = 0u32;
    let mut rest = b;
    while rest != 0 {
        let j = rest.trailing_zeros();
        swaps += (a >> (j + 1)).count_ones();
        rest &= rest - 1;
    }
    Some((a | b, swaps % 2 == 1))
}

/// `i_{∂_a} dx^I = ±dx^{I∖a}`; `None` when `a ∉ I`.
pub fn remove(m: Mask, a: usize) -> Option<(Mask, bool)> {
    let bit = single(a);
    if m & bit == 0 {
        return None;
    }
    let before = (m & (bit - 1)).count_ones();
    Some((m & !bit, before % 2 == 1))
}

pub fn indices(m: Mask) -> impl Iterator<Item = usize> {
    (0..16).filter(move |a| m & single(*a) != 0)
}

pub fn display(m: Mask) -> String {
    indices(m).map(|a| format!("dx{}", a + 1)).collect::<Vec<_>>().join("^")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn wedge_signs() {
        assert_eq!(wedge(0b01, 0b10), Some((0b11, false)));
        assert_eq!(wedge(0b10, 0b01), Some((0b11, true)));
        assert_eq!(wedge(0b01, 0b01), None);
        // dx3 ∧ dx1∧dx2 = dx1∧dx2∧dx3 (two transpositions)
        assert_eq!(wedge(0b100, 0b011), Some((0b111, false)));
    }

    #[test]
    fn remove_signs() {
        assert_eq!(remove(0b111, 1), Some((0b101, true)));
        assert_eq!(remove(0b111, 2), Some((0b011, false)));
        assert_eq!(remove(0b011, 2), None);
    }

    #[test]
    fn enumerates() {
        assert_eq!(of_degree(4, 2).count(), 6);
        assert_eq!(all(3).count(), 8);
    }
}
