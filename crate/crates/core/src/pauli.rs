//! Pauli strings, permutation-group orbits, and commutation checks.
//!
//! A [`PauliString`] is a word over `{I, X, Y, Z}` with a global phase
//! `i^k`, stored as the integer `k mod 4` so that products stay exact.
//! Letter `i` of a string acts on qubit `i`.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use crate::error::{invalid, Error, Result};
use crate::util::next_permutation;

/// Single-qubit Pauli operator. The derived ordering `I < X < Y < Z` is the
/// canonical ordering used for orbits.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum PauliOp {
    I,
    X,
    Y,
    Z,
}

impl PauliOp {
    pub const ALL: [PauliOp; 4] = [PauliOp::I, PauliOp::X, PauliOp::Y, PauliOp::Z];

    /// Product `self · other` as `(i^phase, letter)`.
    pub fn mul(self, other: PauliOp) -> (u8, PauliOp) {
        use PauliOp::*;
        match (self, other) {
            (I, p) | (p, I) => (0, p),
            (a, b) if a == b => (0, I),
            (X, Y) => (1, Z),
            (Y, Z) => (1, X),
            (Z, X) => (1, Y),
            (Y, X) => (3, Z),
            (Z, Y) => (3, X),
            (X, Z) => (3, Y),
            _ => unreachable!(),
        }
    }

    pub fn as_char(self) -> char {
        match self {
            PauliOp::I => 'I',
            PauliOp::X => 'X',
            PauliOp::Y => 'Y',
            PauliOp::Z => 'Z',
        }
    }

    fn has_x(self) -> bool {
        matches!(self, PauliOp::X | PauliOp::Y)
    }

    fn has_z(self) -> bool {
        matches!(self, PauliOp::Z | PauliOp::Y)
    }
}

impl TryFrom<char> for PauliOp {
    type Error = Error;

    fn try_from(c: char) -> Result<Self> {
        match c {
            'I' => Ok(PauliOp::I),
            'X' => Ok(PauliOp::X),
            'Y' => Ok(PauliOp::Y),
            'Z' => Ok(PauliOp::Z),
            other => Err(Error::Parse(format!("not a Pauli letter: {other:?}"))),
        }
    }
}

/// Tensor product of single-qubit Paulis with a global factor `i^phase_power`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PauliString {
    letters: Vec<PauliOp>,
    phase_power: u8,
}

impl PauliString {
    pub fn new(letters: Vec<PauliOp>) -> Self {
        Self::with_phase(letters, 0)
    }

    pub fn with_phase(letters: Vec<PauliOp>, phase_power: u8) -> Self {
        Self {
            letters,
            phase_power: phase_power % 4,
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::new(vec![PauliOp::I; n])
    }

    /// String with `op` on each listed qubit and identity elsewhere.
    pub fn from_sites(n: usize, sites: &[(usize, PauliOp)]) -> Self {
        let mut letters = vec![PauliOp::I; n];
        for &(q, op) in sites {
            letters[q] = op;
        }
        Self::new(letters)
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn letters(&self) -> &[PauliOp] {
        &self.letters
    }

    pub fn phase_power(&self) -> u8 {
        self.phase_power
    }

    /// Number of non-identity letters.
    pub fn weight(&self) -> usize {
        self.letters.iter().filter(|&&p| p != PauliOp::I).count()
    }

    /// Qubits carrying a non-identity letter, ascending.
    pub fn support(&self) -> Vec<usize> {
        self.letters
            .iter()
            .enumerate()
            .filter(|(_, &p)| p != PauliOp::I)
            .map(|(q, _)| q)
            .collect()
    }

    /// Symplectic masks `(x, z)` with bit `q` set when qubit `q` carries an
    /// X- or Z-component (Y sets both).
    pub fn masks(&self) -> (u64, u64) {
        let mut x = 0u64;
        let mut z = 0u64;
        for (q, p) in self.letters.iter().enumerate() {
            if p.has_x() {
                x |= 1 << q;
            }
            if p.has_z() {
                z |= 1 << q;
            }
        }
        (x, z)
    }

    /// Elementwise product with accumulated phase.
    pub fn multiply(&self, other: &PauliString) -> Result<PauliString> {
        self.check_len(other)?;
        let mut phase = self.phase_power + other.phase_power;
        let letters = self
            .letters
            .iter()
            .zip(&other.letters)
            .map(|(&a, &b)| {
                let (k, p) = a.mul(b);
                phase += k;
                p
            })
            .collect();
        Ok(PauliString::with_phase(letters, phase))
    }

    /// Whether the two operators commute: an even number of positions hold
    /// differing non-identity letters.
    pub fn commutes(&self, other: &PauliString) -> Result<bool> {
        self.check_len(other)?;
        let clashes = self
            .letters
            .iter()
            .zip(&other.letters)
            .filter(|(&a, &b)| a != PauliOp::I && b != PauliOp::I && a != b)
            .count();
        Ok(clashes % 2 == 0)
    }

    /// Image under a qubit relabeling: the letter on qubit `q` moves to
    /// qubit `perm[q]`.
    pub fn permuted(&self, perm: &[usize]) -> PauliString {
        debug_assert_eq!(perm.len(), self.len());
        let mut letters = vec![PauliOp::I; self.len()];
        for (q, &p) in self.letters.iter().enumerate() {
            letters[perm[q]] = p;
        }
        PauliString::with_phase(letters, self.phase_power)
    }

    fn check_len(&self, other: &PauliString) -> Result<()> {
        if self.len() != other.len() {
            return Err(invalid(format!(
                "Pauli string lengths differ: {} vs {}",
                self.len(),
                other.len()
            )));
        }
        Ok(())
    }
}

impl fmt::Display for PauliString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.phase_power != 0 {
            write!(f, "i^{}*", self.phase_power)?;
        }
        for p in &self.letters {
            write!(f, "{}", p.as_char())?;
        }
        Ok(())
    }
}

impl FromStr for PauliString {
    type Err = Error;

    /// Parses `"ZZII"` or `"i^k*ZZII"`.
    fn from_str(s: &str) -> Result<Self> {
        let (phase, body) = match s.strip_prefix("i^") {
            Some(rest) => {
                let (k, body) = rest
                    .split_once('*')
                    .ok_or_else(|| Error::Parse(format!("missing '*' after phase in {s:?}")))?;
                let k: u8 = k
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad phase power in {s:?}")))?;
                (k, body)
            }
            None => (0, s),
        };
        let letters = body
            .chars()
            .map(PauliOp::try_from)
            .collect::<Result<Vec<_>>>()?;
        Ok(PauliString::with_phase(letters, phase))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GroupKind {
    /// All node relabelings, `S_n`.
    FullPermutation,
    /// Rotations of a ring, `C_n`.
    Cyclic,
    Trivial,
}

/// A permutation group acting on `n` qubits.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SymmetryGroup {
    pub kind: GroupKind,
    pub n: usize,
}

impl SymmetryGroup {
    pub fn full(n: usize) -> Self {
        Self {
            kind: GroupKind::FullPermutation,
            n,
        }
    }

    pub fn cyclic(n: usize) -> Self {
        Self {
            kind: GroupKind::Cyclic,
            n,
        }
    }

    pub fn trivial(n: usize) -> Self {
        Self {
            kind: GroupKind::Trivial,
            n,
        }
    }

    /// Group order. Fits in `u64` for every supported `n` (at most 20!).
    pub fn order(&self) -> u64 {
        match self.kind {
            GroupKind::FullPermutation => (1..=self.n as u64).product(),
            GroupKind::Cyclic => self.n as u64,
            GroupKind::Trivial => 1,
        }
    }
}

/// The distinct images of a generator under a group, in canonical order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratorOrbit {
    pub generator: PauliString,
    pub group: SymmetryGroup,
    pub elements: Vec<PauliString>,
    /// `order(group) / |elements|`: how often each element appears in the
    /// full sum over group elements.
    pub multiplicity: u64,
}

impl GeneratorOrbit {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }
}

/// Orbit of `generator` under `group`, deduplicated and sorted
/// lexicographically with `I < X < Y < Z`.
pub fn orbit(generator: &PauliString, group: SymmetryGroup) -> Result<GeneratorOrbit> {
    if generator.len() != group.n {
        return Err(invalid(format!(
            "generator has {} letters but the group acts on {} qubits",
            generator.len(),
            group.n
        )));
    }
    let elements: Vec<PauliString> = match group.kind {
        GroupKind::Trivial => vec![generator.clone()],
        GroupKind::Cyclic => {
            let n = group.n;
            (0..n)
                .map(|shift| {
                    let perm: Vec<usize> = (0..n).map(|q| (q + shift) % n).collect();
                    generator.permuted(&perm)
                })
                .collect::<BTreeSet<_>>()
                .into_iter()
                .collect()
        }
        // Every rearrangement of the letter multiset is reachable, so the
        // orbit is exactly the set of distinct multiset permutations.
        GroupKind::FullPermutation => {
            let mut letters = generator.letters.clone();
            letters.sort();
            let mut out = vec![PauliString::with_phase(letters.clone(), generator.phase_power)];
            while next_permutation(&mut letters) {
                out.push(PauliString::with_phase(letters.clone(), generator.phase_power));
            }
            out
        }
    };
    let multiplicity = group.order() / elements.len() as u64;
    Ok(GeneratorOrbit {
        generator: generator.clone(),
        group,
        elements,
        multiplicity,
    })
}

/// True iff every pair in `set` commutes. Strings of mismatched length are
/// reported as not commuting.
pub fn is_mutually_commuting(set: &[PauliString]) -> bool {
    set.iter().enumerate().all(|(i, a)| {
        set[i + 1..]
            .iter()
            .all(|b| a.commutes(b).unwrap_or(false))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn ps(s: &str) -> PauliString {
        s.parse().unwrap()
    }

    #[test]
    fn disjoint_product() {
        let p = ps("XI").multiply(&ps("IX")).unwrap();
        assert_eq!(p, ps("XX"));
        assert_eq!(p.phase_power(), 0);
    }

    #[test]
    fn x_times_y_is_i_z() {
        let p = ps("X").multiply(&ps("Y")).unwrap();
        assert_eq!(p.to_string(), "i^1*Z");
    }

    #[test]
    fn length_mismatch_is_rejected() {
        assert!(matches!(
            ps("X").multiply(&ps("XX")),
            Err(Error::InvalidArgument(_))
        ));
        assert!(ps("X").commutes(&ps("XX")).is_err());
        assert!(!is_mutually_commuting(&[ps("X"), ps("XX")]));
    }

    #[test]
    fn commutation_examples() {
        assert!(ps("XI").commutes(&ps("IX")).unwrap());
        assert!(!ps("X").commutes(&ps("Z")).unwrap());
        assert!(ps("XX").commutes(&ps("ZZ")).unwrap());
        assert!(!is_mutually_commuting(&[ps("XY"), ps("ZI")]));
        assert!(is_mutually_commuting(&[ps("XI"), ps("IX")]));
    }

    #[test]
    fn text_form_round_trips() {
        for s in ["ZZIIIIII", "i^3*XYZ", "i^2*I"] {
            assert_eq!(ps(s).to_string(), s);
        }
        assert!("i^1XY".parse::<PauliString>().is_err());
        assert!("XQ".parse::<PauliString>().is_err());
    }

    #[test]
    fn orbit_sizes() {
        let zz = ps("ZZIIIIII");
        let s8 = orbit(&zz, SymmetryGroup::full(8)).unwrap();
        assert_eq!(s8.len(), 28);
        assert_eq!(s8.multiplicity, 40320 / 28);
        assert_eq!(orbit(&zz, SymmetryGroup::cyclic(8)).unwrap().len(), 8);
        assert_eq!(
            orbit(&ps("XIIIIIII"), SymmetryGroup::full(8)).unwrap().len(),
            8
        );
        assert_eq!(orbit(&zz, SymmetryGroup::trivial(8)).unwrap().len(), 1);
        assert!(orbit(&zz, SymmetryGroup::full(4)).is_err());
    }

    #[test]
    fn orbit_is_sorted_and_closed() {
        let o = orbit(&ps("ZIZI"), SymmetryGroup::cyclic(4)).unwrap();
        assert_eq!(o.elements, vec![ps("IZIZ"), ps("ZIZI")]);
        assert_eq!(o.multiplicity, 2);
        for e in &o.elements {
            let rotated = e.permuted(&[1, 2, 3, 0]);
            assert!(o.elements.contains(&rotated));
        }
    }

    fn arb_string(n: usize) -> impl Strategy<Value = PauliString> {
        (prop::collection::vec(0usize..4, n), 0u8..4)
            .prop_map(|(v, k)| PauliString::with_phase(v.into_iter().map(|i| PauliOp::ALL[i]).collect(), k))
    }

    proptest! {
        #[test]
        fn product_is_associative(a in arb_string(5), b in arb_string(5), c in arb_string(5)) {
            let left = a.multiply(&b).unwrap().multiply(&c).unwrap();
            let right = a.multiply(&b.multiply(&c).unwrap()).unwrap();
            prop_assert_eq!(left, right);
        }

        #[test]
        fn identity_is_neutral_and_self_product_is_identity(a in arb_string(6)) {
            let id = PauliString::identity(6);
            prop_assert_eq!(a.multiply(&id).unwrap(), a.clone());
            let bare = PauliString::new(a.letters().to_vec());
            prop_assert_eq!(bare.multiply(&bare).unwrap(), id);
        }

        #[test]
        fn commutes_iff_products_agree(a in arb_string(4), b in arb_string(4)) {
            let ab = a.multiply(&b).unwrap();
            let ba = b.multiply(&a).unwrap();
            prop_assert_eq!(a.commutes(&b).unwrap(), ab == ba);
        }

        #[test]
        fn orbit_sizes_divide_group_order(a in arb_string(6)) {
            for g in [SymmetryGroup::full(6), SymmetryGroup::cyclic(6)] {
                let o = orbit(&a, g).unwrap();
                prop_assert_eq!(o.len() as u64 * o.multiplicity, g.order());
            }
        }
    }
}
