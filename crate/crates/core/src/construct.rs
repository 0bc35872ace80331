//! Hadamard matrices (Sylvester, Paley type I, Kronecker products) and their
//! conversion to binary equidistant families of maximum size.

use std::fmt;

use crate::error::{Error, Result};
use crate::family::Family;

/// Largest order any constructor will build.
pub const MAX_ORDER: usize = 1 << 12;

/// A `±1` matrix with `H H^T = n I`. Every constructor checks the defining
/// property before returning.
#[derive(Clone, PartialEq, Eq)]
pub struct HadamardMatrix {
    order: usize,
    entries: Vec<i8>,
}

impl HadamardMatrix {
    /// Wraps `rows` after checking entries and orthogonality.
    pub fn from_rows(rows: &[Vec<i8>]) -> Result<Self> {
        let order = rows.len();
        if order == 0 {
            return Err(Error::invalid("Hadamard matrix of order 0"));
        }
        if rows.iter().any(|r| r.len() != order) {
            return Err(Error::invalid("Hadamard matrix must be square"));
        }
        let h = HadamardMatrix {
            order,
            entries: rows.concat(),
        };
        h.verify()?;
        Ok(h)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn get(&self, i: usize, j: usize) -> i8 {
        self.entries[i * self.order + j]
    }

    pub fn row(&self, i: usize) -> &[i8] {
        &self.entries[i * self.order..(i + 1) * self.order]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[i8]> {
        self.entries.chunks(self.order)
    }

    /// Exact check of `H H^T = n I`, entries in `{-1, +1}`, and the order
    /// being 1, 2 or a multiple of 4.
    pub fn verify(&self) -> Result<()> {
        let n = self.order;
        if self.entries.len() != n * n {
            return Err(Error::Invariant("entry count is not order^2".into()));
        }
        if let Some(x) = self.entries.iter().find(|&&x| x != 1 && x != -1) {
            return Err(Error::invalid(format!("entry {x} is not ±1")));
        }
        if n > 2 && !n.is_multiple_of(4) {
            return Err(Error::invalid(format!("order {n} is not 1, 2 or a multiple of 4")));
        }
        for i in 0..n {
            for j in i..n {
                let dot: i64 = self
                    .row(i)
                    .iter()
                    .zip(self.row(j))
                    .map(|(&a, &b)| i64::from(a) * i64::from(b))
                    .sum();
                let expected = if i == j { n as i64 } else { 0 };
                if dot != expected {
                    return Err(Error::invalid(format!(
                        "rows {i} and {j} have inner product {dot}, expected {expected}"
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn negate_row(&self, i: usize) -> Result<Self> {
        let mut h = self.clone();
        for x in &mut h.entries[i * self.order..(i + 1) * self.order] {
            *x = -*x;
        }
        h.verify()?;
        Ok(h)
    }

    /// Reorders rows and columns: output `(i, j)` is input `(rows[i], cols[j])`.
    pub fn permute(&self, rows: &[usize], cols: &[usize]) -> Result<Self> {
        let n = self.order;
        let valid = |p: &[usize]| {
            let mut seen = vec![false; n];
            p.len() == n && p.iter().all(|&x| x < n && !std::mem::replace(&mut seen[x], true))
        };
        if !valid(rows) || !valid(cols) {
            return Err(Error::invalid("row/column maps must be permutations of the order"));
        }
        let entries = rows
            .iter()
            .flat_map(|&r| cols.iter().map(move |&c| (r, c)))
            .map(|(r, c)| self.get(r, c))
            .collect();
        let h = HadamardMatrix { order: n, entries };
        h.verify()?;
        Ok(h)
    }

    /// Rows rendered as whitespace-separated `1` / `-1`.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for row in self.rows() {
            let cells: Vec<String> = row.iter().map(|x| x.to_string()).collect();
            out.push_str(&cells.join(" "));
            out.push('\n');
        }
        out
    }
}

impl fmt::Debug for HadamardMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "HadamardMatrix(order {})\n{}", self.order, self.to_text())
    }
}

fn check_order(order: usize) -> Result<()> {
    if order > MAX_ORDER {
        return Err(Error::Resource(format!(
            "Hadamard order {order} exceeds limit {MAX_ORDER}"
        )));
    }
    Ok(())
}

/// Sylvester matrix of order `2^k`.
pub fn hadamard_sylvester(k: u32) -> Result<HadamardMatrix> {
    let order = 1usize
        .checked_shl(k)
        .filter(|&o| o <= MAX_ORDER)
        .ok_or_else(|| Error::Resource(format!("Sylvester order 2^{k} exceeds limit {MAX_ORDER}")))?;
    let mut entries = vec![1i8];
    let mut size = 1;
    while size < order {
        let mut next = vec![0i8; 4 * size * size];
        let width = 2 * size;
        for i in 0..size {
            for j in 0..size {
                let x = entries[i * size + j];
                next[i * width + j] = x;
                next[i * width + j + size] = x;
                next[(i + size) * width + j] = x;
                next[(i + size) * width + j + size] = -x;
            }
        }
        entries = next;
        size = width;
    }
    let h = HadamardMatrix { order, entries };
    h.verify()?;
    Ok(h)
}

fn is_prime(p: usize) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

/// Paley type I matrix of order `p + 1` for a prime `p ≡ 3 (mod 4)`.
///
/// With `χ` the quadratic character of GF(p) and `Q[i][j] = χ(j - i)`,
/// the matrix is `I + S` where `S = [[0, 1^T], [-1, Q]]`.
pub fn hadamard_paley(p: usize) -> Result<HadamardMatrix> {
    if !is_prime(p) {
        return Err(Error::invalid(format!("{p} is not prime")));
    }
    if p % 4 != 3 {
        return Err(Error::invalid(format!("{p} is not congruent to 3 mod 4")));
    }
    check_order(p + 1)?;
    let mut is_residue = vec![false; p];
    for x in 1..p {
        is_residue[x * x % p] = true;
    }
    let chi = |x: usize| -> i8 {
        if x == 0 {
            0
        } else if is_residue[x] {
            1
        } else {
            -1
        }
    };
    let order = p + 1;
    let mut entries = vec![0i8; order * order];
    for i in 0..order {
        for j in 0..order {
            let s = match (i, j) {
                (0, 0) => 0,
                (0, _) => 1,
                (_, 0) => -1,
                _ => chi((j + p - i) % p),
            };
            entries[i * order + j] = s + i8::from(i == j);
        }
    }
    let h = HadamardMatrix { order, entries };
    h.verify()?;
    Ok(h)
}

/// Kronecker product `a ⊗ b`.
pub fn hadamard_kronecker(a: &HadamardMatrix, b: &HadamardMatrix) -> Result<HadamardMatrix> {
    let order = a
        .order
        .checked_mul(b.order)
        .ok_or_else(|| Error::Resource("Kronecker order overflows".into()))?;
    check_order(order)?;
    let mut entries = Vec::with_capacity(order * order);
    for ai in 0..a.order {
        for bi in 0..b.order {
            for aj in 0..a.order {
                for bj in 0..b.order {
                    entries.push(a.get(ai, aj) * b.get(bi, bj));
                }
            }
        }
    }
    let h = HadamardMatrix { order, entries };
    h.verify()?;
    Ok(h)
}

/// Some Hadamard matrix of the requested order, built from Sylvester and
/// Paley I pieces. Returns an error for orders this catalog cannot reach.
pub fn hadamard_of_order(order: usize) -> Result<HadamardMatrix> {
    check_order(order)?;
    build_order(order).ok_or_else(|| {
        Error::invalid(format!(
            "no Sylvester/Paley I/Kronecker construction for order {order}"
        ))
    })
}

fn build_order(order: usize) -> Option<HadamardMatrix> {
    if order == 0 {
        return None;
    }
    if order.is_power_of_two() {
        return hadamard_sylvester(order.trailing_zeros()).ok();
    }
    if order.is_multiple_of(4) {
        if let Ok(h) = hadamard_paley(order - 1) {
            return Some(h);
        }
    } else {
        return None;
    }
    // Prefer splitting off the largest power of two first.
    let mut d = 1usize << order.trailing_zeros();
    while d > 1 {
        if let (Some(a), Some(b)) = (build_order(d), build_order(order / d)) {
            return hadamard_kronecker(&a, &b).ok();
        }
        d /= 2;
    }
    (3..order)
        .filter(|d| order.is_multiple_of(*d) && order / d > 1)
        .find_map(|d| hadamard_kronecker(&build_order(d)?, &build_order(order / d)?).ok())
}

/// Rows mapped to 0/1 words (`-1 -> 0`, `+1 -> 1`). Distinct rows of a
/// Hadamard matrix agree in exactly half their positions, so the family is
/// equidistant with `λ = n/2` and has `n` members.
pub fn hadamard_to_family(h: &HadamardMatrix) -> Result<Family> {
    if h.order < 2 {
        return Err(Error::invalid("order-1 matrix gives a single word and no pairs"));
    }
    let members = h
        .rows()
        .map(|r| r.iter().map(|&x| u8::from(x == 1)).collect())
        .collect();
    Family::new(h.order, 2, members)
}
