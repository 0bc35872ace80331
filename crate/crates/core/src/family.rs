//! Families of q-ary words, Hamming distance, equidistance checks and the
//! distance-preserving isometries of the Hamming space.
//!
//! A q = 2 family doubles as a set system over `[n]`: a word is the
//! characteristic vector of a subset, and the Hamming distance of two words
//! is the size of the symmetric difference of the subsets.

use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::Rng;
use serde::Serialize;

use crate::error::{Error, Result};

/// Largest supported alphabet; symbols are stored as bytes.
pub const MAX_ALPHABET: u16 = 256;

fn check_alphabet(q: u16) -> Result<()> {
    if !(2..=MAX_ALPHABET).contains(&q) {
        return Err(Error::invalid(format!(
            "alphabet size q = {q} outside 2..={MAX_ALPHABET}"
        )));
    }
    Ok(())
}

fn check_word(q: u16, n: usize, word: &[u8]) -> Result<()> {
    if word.len() != n {
        return Err(Error::invalid(format!(
            "word {} has length {}, expected {n}",
            format_word(word),
            word.len()
        )));
    }
    if let Some(&s) = word.iter().find(|&&s| u16::from(s) >= q) {
        return Err(Error::invalid(format!(
            "symbol {s} is outside the alphabet {{0,...,{}}}",
            q - 1
        )));
    }
    Ok(())
}

/// Number of coordinates in which `u` and `v` differ.
///
/// Both words must have the same length and take symbols from `{0,...,q-1}`.
pub fn hamming_distance(q: u16, u: &[u8], v: &[u8]) -> Result<usize> {
    check_alphabet(q)?;
    check_word(q, u.len(), u)?;
    check_word(q, u.len(), v)?;
    Ok(raw_distance(u, v))
}

#[inline]
pub(crate) fn raw_distance(u: &[u8], v: &[u8]) -> usize {
    u.iter().zip(v).filter(|(a, b)| a != b).count()
}

/// Renders a word compactly: digits run together when every symbol is a
/// single digit, otherwise space separated.
pub fn format_word(word: &[u8]) -> String {
    if word.iter().all(|&s| s < 10) {
        word.iter().map(|s| char::from(b'0' + s)).collect()
    } else {
        word.iter()
            .map(|s| s.to_string())
            .collect::<Vec<_>>()
            .join(" ")
    }
}

fn pack_bits(word: &[u8]) -> Vec<u64> {
    let mut out = vec![0u64; word.len().div_ceil(64)];
    for (i, &s) in word.iter().enumerate() {
        if s == 1 {
            out[i / 64] |= 1 << (i % 64);
        }
    }
    out
}

/// A set of distinct q-ary words of common length `n`, kept in
/// lexicographic order.
#[derive(Clone, PartialEq, Eq)]
pub struct Family {
    n: usize,
    q: u16,
    members: Vec<Vec<u8>>,
    // Popcount form, present only for q = 2.
    packed: Option<Vec<Vec<u64>>>,
}

impl Family {
    /// Validates and canonically orders `members`. Duplicate words are an
    /// error rather than being merged silently.
    pub fn new(n: usize, q: u16, mut members: Vec<Vec<u8>>) -> Result<Self> {
        check_alphabet(q)?;
        if n == 0 && !members.is_empty() {
            return Err(Error::invalid("a nonempty family needs word length n >= 1"));
        }
        for w in &members {
            check_word(q, n, w)?;
        }
        members.sort_unstable();
        if let Some(pair) = members.windows(2).find(|p| p[0] == p[1]) {
            return Err(Error::invalid(format!(
                "duplicate member {}",
                format_word(&pair[0])
            )));
        }
        let packed = (q == 2).then(|| members.iter().map(|w| pack_bits(w)).collect());
        Ok(Family {
            n,
            q,
            members,
            packed,
        })
    }

    pub fn empty(n: usize, q: u16) -> Result<Self> {
        Self::new(n, q, Vec::new())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn q(&self) -> u16 {
        self.q
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn members(&self) -> &[Vec<u8>] {
        &self.members
    }

    pub fn member(&self, i: usize) -> &[u8] {
        &self.members[i]
    }

    pub fn into_members(self) -> Vec<Vec<u8>> {
        self.members
    }

    /// Distance between members `i` and `j`.
    pub fn distance(&self, i: usize, j: usize) -> usize {
        match &self.packed {
            Some(p) => p[i]
                .iter()
                .zip(&p[j])
                .map(|(a, b)| (a ^ b).count_ones() as usize)
                .sum(),
            None => raw_distance(&self.members[i], &self.members[j]),
        }
    }

    /// Parses the line-oriented text format: a header `n q`, then one word
    /// per line as `n` whitespace-separated symbols. Blank lines and lines
    /// starting with `#` are ignored.
    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

        let (hline, header) = lines.next().ok_or(Error::Parse {
            line: 0,
            message: "missing header line `n q`".into(),
        })?;
        let fields: Vec<&str> = header.split_whitespace().collect();
        let parse_err = |line, message: String| Error::Parse { line, message };
        if fields.len() != 2 {
            return Err(parse_err(hline, format!("expected `n q`, found `{header}`")));
        }
        let n: usize = fields[0]
            .parse()
            .map_err(|_| parse_err(hline, format!("bad word length `{}`", fields[0])))?;
        let q: u16 = fields[1]
            .parse()
            .map_err(|_| parse_err(hline, format!("bad alphabet size `{}`", fields[1])))?;
        check_alphabet(q).map_err(|e| parse_err(hline, e.to_string()))?;

        let mut members = Vec::new();
        for (lineno, line) in lines {
            let word = line
                .split_whitespace()
                .map(|tok| {
                    tok.parse::<u16>()
                        .ok()
                        .filter(|&s| s < q)
                        .map(|s| s as u8)
                        .ok_or_else(|| {
                            parse_err(lineno, format!("symbol `{tok}` not in 0..{q}"))
                        })
                })
                .collect::<Result<Vec<u8>>>()?;
            if word.len() != n {
                return Err(parse_err(
                    lineno,
                    format!("expected {n} symbols, found {}", word.len()),
                ));
            }
            members.push(word);
        }
        Family::new(n, q, members)
    }

    /// Serializes to the text format accepted by [`Family::parse`].
    pub fn to_text(&self) -> String {
        let mut out = format!("{} {}\n", self.n, self.q);
        for w in &self.members {
            let line: Vec<String> = w.iter().map(|s| s.to_string()).collect();
            out.push_str(&line.join(" "));
            out.push('\n');
        }
        out
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Family::parse(s)
    }
}

impl Serialize for Family {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("Family", 3)?;
        st.serialize_field("n", &self.n)?;
        st.serialize_field("q", &self.q)?;
        st.serialize_field("members", &self.members)?;
        st.end()
    }
}

impl fmt::Debug for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let words: Vec<String> = self.members.iter().map(|w| format_word(w)).collect();
        write!(f, "Family(n={}, q={}, {{{}}})", self.n, self.q, words.join(", "))
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

/// Proof that every pair of distinct members sits at the same distance.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct EquidistanceCertificate {
    pub lambda: usize,
    pub pair_count: usize,
}

/// Two pairs of members at different distances.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EquidistanceFailure {
    pub reference_pair: (String, String),
    pub reference_distance: usize,
    pub violating_pair: (String, String),
    pub violating_distance: usize,
}

impl fmt::Display for EquidistanceFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "pair ({}, {}) has distance {} while ({}, {}) has {}",
            self.violating_pair.0,
            self.violating_pair.1,
            self.violating_distance,
            self.reference_pair.0,
            self.reference_pair.1,
            self.reference_distance
        )
    }
}

/// Checks all `m(m-1)/2` pairs and returns the common distance.
pub fn check_equidistant(f: &Family) -> Result<EquidistanceCertificate> {
    let m = f.len();
    if m < 2 {
        return Err(Error::Underdetermined { members: m });
    }
    let lambda = f.distance(0, 1);
    for i in 0..m {
        for j in i + 1..m {
            let d = f.distance(i, j);
            if d != lambda {
                let w = |k: usize| format_word(f.member(k));
                return Err(Error::NotEquidistant(Box::new(EquidistanceFailure {
                    reference_pair: (w(0), w(1)),
                    reference_distance: lambda,
                    violating_pair: (w(i), w(j)),
                    violating_distance: d,
                })));
            }
        }
    }
    Ok(EquidistanceCertificate {
        lambda,
        pair_count: m * (m - 1) / 2,
    })
}

/// A coordinate permutation combined with one symbol permutation per
/// coordinate. Maps `u` to `w` with `w[perm[i]] = sym[i][u[i]]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Isometry {
    coordinate_permutation: Vec<usize>,
    symbol_permutations: Vec<Vec<u8>>,
}

fn is_permutation(p: &[usize]) -> bool {
    let mut seen = vec![false; p.len()];
    p.iter()
        .all(|&x| x < seen.len() && !std::mem::replace(&mut seen[x], true))
}

impl Isometry {
    pub fn new(coordinate_permutation: Vec<usize>, symbol_permutations: Vec<Vec<u8>>) -> Result<Self> {
        let n = coordinate_permutation.len();
        if !is_permutation(&coordinate_permutation) {
            return Err(Error::invalid("coordinate map is not a permutation"));
        }
        if symbol_permutations.len() != n {
            return Err(Error::invalid(format!(
                "{} symbol permutations given for {n} coordinates",
                symbol_permutations.len()
            )));
        }
        let q = symbol_permutations.first().map_or(2, Vec::len);
        for sigma in &symbol_permutations {
            let as_usize: Vec<usize> = sigma.iter().map(|&s| s as usize).collect();
            if sigma.len() != q || !is_permutation(&as_usize) {
                return Err(Error::invalid("symbol map is not a permutation of the alphabet"));
            }
        }
        Ok(Isometry {
            coordinate_permutation,
            symbol_permutations,
        })
    }

    pub fn identity(n: usize, q: u16) -> Self {
        Isometry {
            coordinate_permutation: (0..n).collect(),
            symbol_permutations: vec![(0..q).map(|s| s as u8).collect(); n],
        }
    }

    /// Uniformly random element of the isometry group of `{0,...,q-1}^n`.
    pub fn random<R: Rng + ?Sized>(n: usize, q: u16, rng: &mut R) -> Self {
        let mut coordinate_permutation: Vec<usize> = (0..n).collect();
        coordinate_permutation.shuffle(rng);
        let symbol_permutations = (0..n)
            .map(|_| {
                let mut s: Vec<u8> = (0..q).map(|s| s as u8).collect();
                s.shuffle(rng);
                s
            })
            .collect();
        Isometry {
            coordinate_permutation,
            symbol_permutations,
        }
    }

    pub fn n(&self) -> usize {
        self.coordinate_permutation.len()
    }

    /// Alphabet size the symbol permutations act on; `None` when `n = 0`.
    pub fn q(&self) -> Option<u16> {
        self.symbol_permutations.first().map(|s| s.len() as u16)
    }

    pub fn apply_word(&self, word: &[u8]) -> Vec<u8> {
        let mut out = vec![0u8; word.len()];
        for (i, &s) in word.iter().enumerate() {
            out[self.coordinate_permutation[i]] = self.symbol_permutations[i][s as usize];
        }
        out
    }
}

/// Image of `f` under `iso`, re-sorted into canonical order.
pub fn apply_isometry(iso: &Isometry, f: &Family) -> Result<Family> {
    if iso.n() != f.n() || iso.q().is_some_and(|q| q != f.q()) {
        return Err(Error::invalid(format!(
            "isometry on n={}, q={:?} applied to family with n={}, q={}",
            iso.n(),
            iso.q(),
            f.n(),
            f.q()
        )));
    }
    let image = f.members().iter().map(|w| iso.apply_word(w)).collect();
    Family::new(f.n(), f.q(), image)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fam(n: usize, q: u16, words: &[&str]) -> Family {
        let members = words
            .iter()
            .map(|w| w.bytes().map(|b| b - b'0').collect())
            .collect();
        Family::new(n, q, members).unwrap()
    }

    #[test]
    fn distance_examples() {
        assert_eq!(hamming_distance(2, &[0, 1, 1, 0], &[0, 1, 1, 0]).unwrap(), 0);
        // {1,2} vs {2,3} in [3]
        assert_eq!(hamming_distance(2, &[1, 1, 0], &[0, 1, 1]).unwrap(), 2);
        assert_eq!(hamming_distance(3, &[0, 2], &[2, 1]).unwrap(), 2);
    }

    #[test]
    fn distance_rejects_bad_input() {
        assert!(matches!(
            hamming_distance(2, &[0, 1], &[0]),
            Err(Error::InvalidInput(_))
        ));
        assert!(matches!(
            hamming_distance(2, &[0, 2], &[0, 1]),
            Err(Error::InvalidInput(_))
        ));
    }

    #[test]
    fn equidistant_examples() {
        let f = fam(3, 2, &["000", "110", "101", "011"]);
        let cert = check_equidistant(&f).unwrap();
        assert_eq!(cert.lambda, 2);
        assert_eq!(cert.pair_count, 6);

        let g = fam(2, 2, &["00", "01", "11"]);
        match check_equidistant(&g) {
            Err(Error::NotEquidistant(fail)) => {
                assert_eq!(fail.violating_pair, ("00".into(), "11".into()));
                assert_eq!(fail.violating_distance, 2);
                assert_eq!(fail.reference_pair, ("00".into(), "01".into()));
                assert_eq!(fail.reference_distance, 1);
            }
            other => panic!("expected failure, got {other:?}"),
        }
    }

    #[test]
    fn small_families_are_underdetermined() {
        assert_eq!(
            check_equidistant(&Family::empty(3, 2).unwrap()),
            Err(Error::Underdetermined { members: 0 })
        );
        assert_eq!(
            check_equidistant(&fam(3, 2, &["010"])),
            Err(Error::Underdetermined { members: 1 })
        );
    }

    #[test]
    fn family_validation() {
        assert!(Family::new(2, 2, vec![vec![0, 1], vec![0, 1]]).is_err());
        assert!(Family::new(2, 2, vec![vec![0, 2]]).is_err());
        assert!(Family::new(2, 1, vec![]).is_err());
        assert!(Family::new(0, 2, vec![vec![]]).is_err());
        let f = fam(2, 2, &["11", "00", "10"]);
        assert_eq!(f.members(), &[vec![0, 0], vec![1, 0], vec![1, 1]]);
    }

    #[test]
    fn packed_distance_matches_symbols_past_one_word() {
        let n = 130;
        let a: Vec<u8> = (0..n).map(|i| (i % 3 == 0) as u8).collect();
        let b: Vec<u8> = (0..n).map(|i| (i % 5 == 0) as u8).collect();
        let f = Family::new(n, 2, vec![a.clone(), b.clone()]).unwrap();
        assert_eq!(f.distance(0, 1), raw_distance(&a, &b));
    }

    #[test]
    fn text_format() {
        let text = "# a comment\n3 2\n0 0 0\n\n1 1 0\n# another\n0 1 1\n1 0 1\n";
        let f = Family::parse(text).unwrap();
        assert_eq!(f.len(), 4);
        assert_eq!(Family::parse(&f.to_text()).unwrap(), f);

        assert!(matches!(Family::parse(""), Err(Error::Parse { .. })));
        assert!(matches!(
            Family::parse("2 2\n0 1 1\n"),
            Err(Error::Parse { line: 2, .. })
        ));
        assert!(matches!(
            Family::parse("2 2\n0 3\n"),
            Err(Error::Parse { line: 2, .. })
        ));
        assert!(matches!(Family::parse("2\n"), Err(Error::Parse { line: 1, .. })));
        let empty = Family::parse("4 3\n").unwrap();
        assert!(empty.is_empty());
    }

    #[test]
    fn isometry_examples() {
        let f = fam(2, 2, &["00", "01"]);
        assert_eq!(apply_isometry(&Isometry::identity(2, 2), &f).unwrap(), f);

        let swap = Isometry::new(vec![1, 0], vec![vec![0, 1], vec![0, 1]]).unwrap();
        let g = apply_isometry(&swap, &f).unwrap();
        assert_eq!(g, fam(2, 2, &["00", "10"]));
        assert_eq!(g.distance(0, 1), 1);

        assert!(apply_isometry(&Isometry::identity(3, 2), &f).is_err());
        assert!(apply_isometry(&Isometry::identity(2, 3), &f).is_err());
        assert!(Isometry::new(vec![0, 0], vec![vec![0, 1], vec![0, 1]]).is_err());
        assert!(Isometry::new(vec![1, 0], vec![vec![0, 0], vec![0, 1]]).is_err());
    }
}
