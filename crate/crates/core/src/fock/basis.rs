use std::fmt;

use serde::{Deserialize, Serialize};

pub const N_SPIN_ORBITALS: usize = 6;
pub const N_DETERMINANTS: usize = 15;

/// One-hole orbitals in the order used for every 3x3 orbital matrix.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Orbital {
    #[serde(rename = "ex")]
    Ex,
    #[serde(rename = "ey")]
    Ey,
    #[serde(rename = "a")]
    A,
}

impl Orbital {
    pub const ALL: [Orbital; 3] = [Orbital::Ex, Orbital::Ey, Orbital::A];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn label(self) -> &'static str {
        match self {
            Orbital::Ex => "ex",
            Orbital::Ey => "ey",
            Orbital::A => "a",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Spin {
    #[serde(rename = "up")]
    Up,
    #[serde(rename = "down")]
    Down,
}

impl Spin {
    pub fn index(self) -> usize {
        self as usize
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SpinOrbital {
    pub orbital: Orbital,
    pub spin: Spin,
}

impl SpinOrbital {
    pub fn all() -> [SpinOrbital; N_SPIN_ORBITALS] {
        let mut out = [SpinOrbital { orbital: Orbital::Ex, spin: Spin::Up }; N_SPIN_ORBITALS];
        for o in Orbital::ALL {
            for s in [Spin::Up, Spin::Down] {
                let so = SpinOrbital { orbital: o, spin: s };
                out[so.index()] = so;
            }
        }
        out
    }

    /// 2·orbital + spin, so operators on spin-orbitals are kron(orbital, spin).
    pub fn index(self) -> usize {
        2 * self.orbital.index() + self.spin.index()
    }

    pub fn from_index(k: usize) -> SpinOrbital {
        SpinOrbital::all()[k]
    }
}

impl fmt::Display for SpinOrbital {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let arrow = match self.spin {
            Spin::Up => '↑',
            Spin::Down => '↓',
        };
        write!(f, "{}{}", self.orbital.label(), arrow)
    }
}

/// c†_i c†_j |0> with i < j in spin-orbital index order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Determinant {
    pub occupied: (usize, usize),
}

impl Determinant {
    pub fn new(i: usize, j: usize) -> Option<Determinant> {
        (i < j && j < N_SPIN_ORBITALS).then_some(Determinant { occupied: (i, j) })
    }

    pub fn mask(self) -> u8 {
        (1 << self.occupied.0) | (1 << self.occupied.1)
    }

    pub fn from_mask(mask: u8) -> Option<Determinant> {
        if mask.count_ones() != 2 {
            return None;
        }
        let i = mask.trailing_zeros() as usize;
        let j = 7 - mask.leading_zeros() as usize;
        Determinant::new(i, j)
    }

    pub fn spin_orbitals(self) -> (SpinOrbital, SpinOrbital) {
        (SpinOrbital::from_index(self.occupied.0), SpinOrbital::from_index(self.occupied.1))
    }

    /// Number of holes in the a orbital (0 for e², 1 for ae, 2 for a²).
    pub fn a_count(self) -> usize {
        let (p, q) = self.spin_orbitals();
        [p, q].iter().filter(|s| s.orbital == Orbital::A).count()
    }

    /// Position in [`build_two_hole_basis`].
    pub fn index(self) -> usize {
        let (i, j) = self.occupied;
        // Pairs before row i: 5 + 4 + ... ; then offset inside the row.
        i * (2 * N_SPIN_ORBITALS - i - 1) / 2 + (j - i - 1)
    }
}

impl fmt::Display for Determinant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (p, q) = self.spin_orbitals();
        write!(f, "{{{p}, {q}}}")
    }
}

/// The fifteen determinants, pairs (i, j) with i < j in lexicographic order.
pub fn build_two_hole_basis() -> Vec<Determinant> {
    let mut out = Vec::with_capacity(N_DETERMINANTS);
    for i in 0..N_SPIN_ORBITALS {
        for j in (i + 1)..N_SPIN_ORBITALS {
            out.push(Determinant { occupied: (i, j) });
        }
    }
    out
}

/// Fermionic sign and result of c†_p c_q on an occupation bit mask.
pub(crate) fn hop(mask: u8, p: usize, q: usize) -> Option<(u8, f64)> {
    if mask & (1 << q) == 0 {
        return None;
    }
    let below = |m: u8, k: usize| (m & ((1u8 << k) - 1)).count_ones();
    let mut sign = if below(mask, q) % 2 == 0 { 1.0 } else { -1.0 };
    let m = mask & !(1 << q);
    if m & (1 << p) != 0 {
        return None;
    }
    if below(m, p) % 2 == 1 {
        sign = -sign;
    }
    Some((m | (1 << p), sign))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fifteen_distinct_determinants() {
        let b = build_two_hole_basis();
        assert_eq!(b.len(), 15);
        for (k, d) in b.iter().enumerate() {
            assert_eq!(d.index(), k);
            assert_eq!(Determinant::from_mask(d.mask()), Some(*d));
        }
    }

    #[test]
    fn pauli_exclusion() {
        let a_up = SpinOrbital { orbital: Orbital::A, spin: Spin::Up }.index();
        assert!(Determinant::new(a_up, a_up).is_none());
        let ex_up = SpinOrbital { orbital: Orbital::Ex, spin: Spin::Up }.index();
        let ey_up = SpinOrbital { orbital: Orbital::Ey, spin: Spin::Up }.index();
        let n = build_two_hole_basis().iter().filter(|d| d.occupied == (ex_up, ey_up)).count();
        assert_eq!(n, 1);
    }

    #[test]
    fn hop_signs() {
        // c_2 c†_1 c†_2 |0> = -c†_1 |0>, then c†_0 leaves the sign alone.
        assert_eq!(hop(0b110, 0, 2), Some((0b011, -1.0)));
        assert_eq!(hop(0b011, 2, 0), Some((0b110, -1.0)));
        assert_eq!(hop(0b011, 0, 0), Some((0b011, 1.0)));
        assert_eq!(hop(0b011, 1, 0), None);
        assert_eq!(hop(0b010, 1, 0), None);
    }
}
