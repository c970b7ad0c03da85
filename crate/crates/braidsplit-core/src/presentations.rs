//! Parametric builders for the presentation families of the surface braid
//! groups of the torus and the Klein bottle: the pure and full braid groups,
//! the punctured (kernel) groups, the two-block mixed group, and its quotient
//! by the commutator subgroup of the kernel.
//!
//! Every relation family is instantiated eagerly over its index ranges and
//! stored as a single freely reduced word (`lhs * rhs^-1`), with a label
//! recording which relation and indices produced it. Trivial `C(i,i)` letters
//! disappear at construction.

use crate::intlin::IntMat;
use crate::word::{a, b, c, commutator, prod, sigma, Gen, Word};
use std::collections::BTreeMap;
use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
pub enum Surface {
    Torus,
    Klein,
}

impl Surface {
    pub fn tag(self) -> &'static str {
        match self {
            Surface::Torus => "T",
            Surface::Klein => "K",
        }
    }

    pub fn parse(s: &str) -> Option<Surface> {
        match s {
            "T" | "t" | "torus" | "Torus" => Some(Surface::Torus),
            "K" | "k" | "klein" | "Klein" => Some(Surface::Klein),
            _ => None,
        }
    }
}

impl fmt::Display for Surface {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.tag())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    Pure,
    Full,
    PuncturedPure,
    PuncturedFull,
    Mixed,
    QuotientGamma2,
}

impl Family {
    pub fn name(self) -> &'static str {
        match self {
            Family::Pure => "pure",
            Family::Full => "full",
            Family::PuncturedPure => "punctured-pure",
            Family::PuncturedFull => "punctured-full",
            Family::Mixed => "mixed",
            Family::QuotientGamma2 => "gamma2",
        }
    }

    pub fn parse(s: &str) -> Option<Family> {
        match s {
            "pure" => Some(Family::Pure),
            "full" => Some(Family::Full),
            "punctured-pure" => Some(Family::PuncturedPure),
            "punctured-full" => Some(Family::PuncturedFull),
            "mixed" => Some(Family::Mixed),
            "gamma2" => Some(Family::QuotientGamma2),
            _ => None,
        }
    }
}

#[derive(Debug, Clone)]
pub struct Relator {
    pub word: Word,
    pub label: String,
}

#[derive(Debug, Clone)]
pub struct Presentation {
    pub surface: Surface,
    pub family: Family,
    /// `[n]` or `[n, m]` depending on the family.
    pub params: Vec<u32>,
    pub generators: Vec<Gen>,
    pub relators: Vec<Relator>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PresentationError {
    Parameter(String),
}

impl fmt::Display for PresentationError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PresentationError::Parameter(msg) => write!(f, "parameter error: {msg}"),
        }
    }
}

impl std::error::Error for PresentationError {}

impl Presentation {
    fn new(surface: Surface, family: Family, params: Vec<u32>) -> Self {
        Presentation { surface, family, params, generators: Vec::new(), relators: Vec::new() }
    }

    fn rel(&mut self, label: String, word: Word) {
        self.relators.push(Relator { word, label });
    }

    /// Checks that every relator mentions only listed generators.
    pub fn relators_in_alphabet(&self) -> bool {
        self.relators.iter().all(|r| {
            r.word.support().all(|g| self.generators.contains(&g))
        })
    }

    /// Exponent-sum matrix, one row per relator, one column per generator.
    pub fn abelianized_relation_matrix(&self) -> IntMat {
        let rows = self
            .relators
            .iter()
            .map(|r| {
                self.generators
                    .iter()
                    .map(|&g| r.word.exponent_sum(g) as i128)
                    .collect()
            })
            .collect();
        IntMat::from_rows(rows)
    }

    /// Serializes to the presentation file format: a header line followed by
    /// one relator per line in word syntax.
    pub fn to_text(&self) -> String {
        let params: Vec<String> = self.params.iter().map(|p| p.to_string()).collect();
        let mut out = format!(
            "surface={} family={} params={}\n",
            self.surface.tag(),
            self.family.name(),
            params.join(",")
        );
        for r in &self.relators {
            out.push_str(&format!("{}\n", r.word));
        }
        out
    }

    /// Parses the file format produced by [`Presentation::to_text`].
    /// Relators get positional labels; the generator list is rebuilt from the
    /// family and parameters.
    pub fn from_text(text: &str) -> Result<Presentation, String> {
        let mut lines = text.lines();
        let header = lines.next().ok_or("empty presentation file")?;
        let mut surface = None;
        let mut family = None;
        let mut params: Vec<u32> = Vec::new();
        for field in header.split_whitespace() {
            let (key, value) = field.split_once('=').ok_or("bad header field")?;
            match key {
                "surface" => surface = Surface::parse(value),
                "family" => family = Family::parse(value),
                "params" => {
                    params = value
                        .split(',')
                        .map(|p| p.parse::<u32>().map_err(|e| e.to_string()))
                        .collect::<Result<_, _>>()?;
                }
                other => return Err(format!("unknown header key `{other}`")),
            }
        }
        let surface = surface.ok_or("missing surface")?;
        let family = family.ok_or("missing or unknown family")?;
        let mut p = build(surface, family, &params).map_err(|e| e.to_string())?;
        p.relators.clear();
        for (k, line) in lines.enumerate() {
            if line.trim().is_empty() {
                continue;
            }
            let word = Word::parse(line).map_err(|e| e.to_string())?;
            p.rel(format!("file[{k}]"), word);
        }
        Ok(p)
    }
}

/// Dispatches on the family tag.
pub fn build(
    surface: Surface,
    family: Family,
    params: &[u32],
) -> Result<Presentation, PresentationError> {
    let need = |k: usize| -> Result<(), PresentationError> {
        if params.len() == k {
            Ok(())
        } else {
            Err(PresentationError::Parameter(format!(
                "family {} takes {k} parameter(s)",
                family.name()
            )))
        }
    };
    match family {
        Family::Pure => {
            need(1)?;
            pure_braid_presentation(surface, params[0])
        }
        Family::Full => {
            need(1)?;
            full_braid_presentation(surface, params[0])
        }
        Family::PuncturedPure => {
            need(2)?;
            punctured_pure_presentation(surface, params[0], params[1])
        }
        Family::PuncturedFull => {
            need(2)?;
            punctured_full_presentation(surface, params[0], params[1])
        }
        Family::Mixed => {
            need(2)?;
            mixed_presentation(surface, params[0], params[1])
        }
        Family::QuotientGamma2 => {
            need(2)?;
            quotient_gamma2_presentation(surface, params[0], params[1])
        }
    }
}

fn check_positive(name: &str, v: u32) -> Result<(), PresentationError> {
    if v == 0 {
        Err(PresentationError::Parameter(format!("{name} must be >= 1")))
    } else {
        Ok(())
    }
}

/// `sigma_lo ... sigma_{hi-1} sigma_hi^2 sigma_{hi-1} ... sigma_lo`;
/// empty when `hi < lo`.
pub fn sigma_chain(lo: u32, hi: u32) -> Word {
    if hi < lo {
        return Word::empty();
    }
    let up = prod((lo..=hi - 1).map(sigma));
    let down = prod((lo..=hi - 1).rev().map(sigma));
    prod([up, sigma(hi).pow(2), down])
}

fn relator(lhs: Word, rhs: Word) -> Word {
    lhs.concat(&rhs.inverse())
}

/// Presentation of the pure braid group `P_n(M)`.
pub fn pure_braid_presentation(
    surface: Surface,
    n: u32,
) -> Result<Presentation, PresentationError> {
    check_positive("n", n)?;
    let mut p = Presentation::new(surface, Family::Pure, vec![n]);
    for i in 1..=n {
        p.generators.push(Gen::A(i));
        p.generators.push(Gen::B(i));
    }
    for i in 1..=n {
        for j in i + 1..=n {
            p.generators.push(Gen::C(i, j));
        }
    }
    pure_relations(&mut p, surface, 1, n, "pure");
    Ok(p)
}

/// Relations (1)-(8) of the pure braid presentation over strings
/// `lo..=hi`, with `C(i,j)` allowed to reach below `lo` in the punctured
/// families. For the plain pure braid group `lo = 1`.
///
/// `lo` is the first string whose `a_i, b_i` exist; the index ranges follow
/// the statements in the source presentations with `lo = n+1`, `hi = n+m`.
fn pure_relations(p: &mut Presentation, surface: Surface, lo: u32, hi: u32, tag: &str) {
    let t = surface == Surface::Torus;
    // (1) a_i a_j = a_j a_i
    for i in lo..=hi {
        for j in i + 1..=hi {
            p.rel(
                format!("{tag}(1)[i={i},j={j}]"),
                commutator(&a(i), &a(j)),
            );
        }
    }
    // (2) a_i^-1 b_j a_i = b_j a_j C_{i,j}^-1 C_{i+1,j} a_j^-1
    for i in lo..=hi {
        for j in i + 1..=hi {
            let lhs = prod([a(i).inverse(), b(j), a(i)]);
            let rhs = prod([b(j), a(j), c(i, j).inverse(), c(i + 1, j), a(j).inverse()]);
            p.rel(format!("{tag}(2)[i={i},j={j}]"), relator(lhs, rhs));
        }
    }
    // (3) a_i^-1 C_{j,k} a_i
    for i in lo..=hi.min(if tag == "pure" { hi } else { hi - 1 }) {
        for k in lo.max(2)..=hi {
            for j in 1..k {
                let lhs = prod([a(i).inverse(), c(j, k), a(i)]);
                let rhs = if (i < j && j < k) || (j < k && k < i) {
                    c(j, k)
                } else if j <= i && i < k {
                    prod([
                        a(k),
                        c(i + 1, k).inverse(),
                        c(i, k),
                        a(k).inverse(),
                        c(j, k),
                        c(i, k).inverse(),
                        c(i + 1, k),
                    ])
                } else {
                    continue;
                };
                p.rel(format!("{tag}(3)[i={i},j={j},k={k}]"), relator(lhs, rhs));
            }
        }
    }
    // (4) C_{i,l}^-1 C_{j,k} C_{i,l}
    for l in lo.max(2)..=hi {
        for i in 1..l {
            for k in lo.max(2)..=hi {
                for j in 1..k {
                    let fixed = (i < l && l < j && j < k) || (j <= i && i < l && l < k);
                    let moved = i < j && j <= l && l < k;
                    if !fixed && !moved {
                        continue;
                    }
                    let lhs = prod([c(i, l).inverse(), c(j, k), c(i, l)]);
                    let rhs = if fixed {
                        c(j, k)
                    } else {
                        prod([
                            c(i, k),
                            c(l + 1, k).inverse(),
                            c(l, k),
                            c(i, k).inverse(),
                            c(j, k),
                            c(l, k).inverse(),
                            c(l + 1, k),
                        ])
                    };
                    p.rel(
                        format!("{tag}(4)[i={i},l={l},j={j},k={k}]"),
                        relator(lhs, rhs),
                    );
                }
            }
        }
    }
    // (5) the surface relations, oriented surface-side first.
    for i in lo..=hi {
        let (product_side, surface_side) = if t {
            (
                prod((i + 1..=hi).map(|j| prod([c(i, j).inverse(), c(i + 1, j)]))),
                prod([a(i), b(i), c(1, i), a(i).inverse(), b(i).inverse()]),
            )
        } else {
            (
                prod((i + 1..=hi).map(|j| prod([c(i, j), c(i + 1, j).inverse()]))),
                prod([b(i), c(1, i), a(i).inverse(), b(i).inverse(), a(i).inverse()]),
            )
        };
        p.rel(format!("{tag}(5)[i={i}]"), relator(surface_side, product_side));
    }
    // (6) b_j b_i = b_i b_j (C_{i,j} C_{i+1,j}^-1 on the Klein bottle)
    for i in lo..=hi {
        for j in i + 1..=hi {
            let lhs = prod([b(j), b(i)]);
            let rhs = if t {
                prod([b(i), b(j)])
            } else {
                prod([b(i), b(j), c(i, j), c(i + 1, j).inverse()])
            };
            p.rel(format!("{tag}(6)[i={i},j={j}]"), relator(lhs, rhs));
        }
    }
    // (7) b_i^-1 a_j b_i
    for i in lo..=hi {
        for j in i + 1..=hi {
            let lhs = prod([b(i).inverse(), a(j), b(i)]);
            let twist = prod([c(i, j), c(i + 1, j).inverse()]);
            let twist = if t { twist } else { twist.inverse() };
            let rhs = prod([a(j), b(j), twist, b(j).inverse()]);
            p.rel(format!("{tag}(7)[i={i},j={j}]"), relator(lhs, rhs));
        }
    }
    // (8) b_i^-1 C_{j,k} b_i
    for i in lo..=hi {
        for k in lo.max(2)..=hi {
            for j in 1..k {
                let lhs = prod([b(i).inverse(), c(j, k), b(i)]);
                let rhs = if (i < j && j < k) || (j < k && k < i) {
                    c(j, k)
                } else if j <= i && i < k {
                    let twist = prod([c(i, k), c(i + 1, k).inverse()]);
                    let twist = if t { twist } else { twist.inverse() };
                    prod([
                        c(i + 1, k),
                        c(i, k).inverse(),
                        c(j, k),
                        b(k),
                        twist,
                        b(k).inverse(),
                    ])
                } else {
                    continue;
                };
                p.rel(format!("{tag}(8)[i={i},j={j},k={k}]"), relator(lhs, rhs));
            }
        }
    }
}

/// Presentation of the full braid group `B_n(M)` on generators
/// `a, b, sigma_1..sigma_{n-1}` (`a`, `b` are written `a1`, `b1`).
pub fn full_braid_presentation(
    surface: Surface,
    n: u32,
) -> Result<Presentation, PresentationError> {
    check_positive("n", n)?;
    let mut p = Presentation::new(surface, Family::Full, vec![n]);
    p.generators.push(Gen::A(1));
    p.generators.push(Gen::B(1));
    for i in 1..n {
        p.generators.push(Gen::Sigma(i));
    }
    full_relations_1_to_7(&mut p, surface, n, "full");
    let s1 = surface_commutator(surface);
    p.rel("full(8)".into(), relator(sigma_chain(1, n - 1), s1));
    Ok(p)
}

/// `bab^-1a^-1` on the torus, `ba^-1b^-1a^-1` on the Klein bottle.
pub fn surface_commutator(surface: Surface) -> Word {
    match surface {
        Surface::Torus => prod([b(1), a(1), b(1).inverse(), a(1).inverse()]),
        Surface::Klein => prod([b(1), a(1).inverse(), b(1).inverse(), a(1).inverse()]),
    }
}

/// Relations (1)-(7) of the full braid presentation, shared by the mixed
/// and quotient presentations (where the sigma range is `1..n-1`).
fn full_relations_1_to_7(p: &mut Presentation, surface: Surface, n: u32, tag: &str) {
    for i in 1..n.saturating_sub(1) {
        let lhs = prod([sigma(i), sigma(i + 1), sigma(i)]);
        let rhs = prod([sigma(i + 1), sigma(i), sigma(i + 1)]);
        p.rel(format!("{tag}(1)[i={i}]"), relator(lhs, rhs));
    }
    for i in 1..n {
        for j in i + 2..n {
            p.rel(
                format!("{tag}(2)[i={i},j={j}]"),
                commutator(&sigma(j), &sigma(i)),
            );
        }
    }
    for j in 2..n {
        p.rel(format!("{tag}(3)[j={j}]"), commutator(&a(1), &sigma(j)));
        p.rel(format!("{tag}(4)[j={j}]"), commutator(&b(1), &sigma(j)));
    }
    if n >= 2 {
        // (5) b^-1 s1 a = s1 a s1 b^-1 s1
        let lhs = prod([b(1).inverse(), sigma(1), a(1)]);
        let rhs = prod([sigma(1), a(1), sigma(1), b(1).inverse(), sigma(1)]);
        p.rel(format!("{tag}(5)"), relator(lhs, rhs));
        // (6) a (s1 a s1) = (s1 a s1) a
        let sas = prod([sigma(1), a(1), sigma(1)]);
        p.rel(format!("{tag}(6)"), commutator(&a(1), &sas));
        // (7)
        let (lhs, rhs) = match surface {
            Surface::Torus => {
                let inner = prod([sigma(1).inverse(), b(1), sigma(1).inverse()]);
                (prod([b(1), inner.clone()]), prod([inner, b(1)]))
            }
            Surface::Klein => {
                let li = prod([sigma(1).inverse(), b(1), sigma(1)]);
                let ri = prod([sigma(1).inverse(), b(1), sigma(1).inverse()]);
                (prod([b(1), li]), prod([ri, b(1)]))
            }
        };
        p.rel(format!("{tag}(7)"), relator(lhs, rhs));
    }
}

/// Presentation of `P_m(M - {x_1..x_n})`, the pure braid group of the
/// n-punctured surface.
pub fn punctured_pure_presentation(
    surface: Surface,
    n: u32,
    m: u32,
) -> Result<Presentation, PresentationError> {
    check_positive("n", n)?;
    check_positive("m", m)?;
    let mut p = Presentation::new(surface, Family::PuncturedPure, vec![n, m]);
    push_punctured_generators(&mut p, n, m);
    pure_relations(&mut p, surface, n + 1, n + m, "ppure");
    Ok(p)
}

fn push_punctured_generators(p: &mut Presentation, n: u32, m: u32) {
    for i in n + 1..=n + m {
        p.generators.push(Gen::A(i));
        p.generators.push(Gen::B(i));
    }
    for j in n + 1..=n + m {
        for i in 1..j {
            p.generators.push(Gen::C(i, j));
        }
    }
}

/// Presentation of `B_m(M - {x_1..x_n})`, requiring `m >= 2`.
pub fn punctured_full_presentation(
    surface: Surface,
    n: u32,
    m: u32,
) -> Result<Presentation, PresentationError> {
    check_positive("n", n)?;
    if m < 2 {
        return Err(PresentationError::Parameter(
            "punctured-full needs m >= 2 (use punctured-pure for m = 1)".into(),
        ));
    }
    let mut p = Presentation::new(surface, Family::PuncturedFull, vec![n, m]);
    push_punctured_generators(&mut p, n, m);
    for i in n + 1..n + m {
        p.generators.push(Gen::Sigma(i));
    }
    pure_relations(&mut p, surface, n + 1, n + m, "ppure");
    punctured_sigma_relations(&mut p, n, m, "pfull");
    Ok(p)
}

/// Relations (1)-(6) of the punctured full presentation: the Artin braid
/// relations among the kernel sigmas and their action on `a_j, b_j, C_{l,j}`.
fn punctured_sigma_relations(p: &mut Presentation, n: u32, m: u32, tag: &str) {
    for i in n + 1..=(n + m).saturating_sub(2) {
        let lhs = prod([sigma(i), sigma(i + 1), sigma(i)]);
        let rhs = prod([sigma(i + 1), sigma(i), sigma(i + 1)]);
        p.rel(format!("{tag}(1)[i={i}]"), relator(lhs, rhs));
    }
    for i in n + 1..n + m {
        for j in i + 2..n + m {
            p.rel(format!("{tag}(2)[i={i},j={j}]"), commutator(&sigma(i), &sigma(j)));
        }
    }
    for i in n + 1..n + m {
        for j in n + 1..=n + m {
            // (3) sigma_i^-1 a_j sigma_i
            let lhs = prod([sigma(i).inverse(), a(j), sigma(i)]);
            let rhs = if j == i {
                prod([sigma(i).pow(-2), a(i + 1)])
            } else if j == i + 1 {
                prod([a(i), sigma(i).pow(2)])
            } else {
                a(j)
            };
            p.rel(format!("{tag}(3)[i={i},j={j}]"), relator(lhs, rhs));
            // (4) sigma_i^-1 b_j sigma_i
            let lhs = prod([sigma(i).inverse(), b(j), sigma(i)]);
            let rhs = if j == i {
                prod([b(i + 1), sigma(i).pow(2)])
            } else if j == i + 1 {
                prod([sigma(i).pow(-2), b(i)])
            } else {
                b(j)
            };
            p.rel(format!("{tag}(4)[i={i},j={j}]"), relator(lhs, rhs));
        }
    }
    // (5) sigma_i^-1 C_{l,j} sigma_i
    for i in n + 1..n + m {
        for j in n + 1..=n + m {
            for l in 1..j {
                let lhs = prod([sigma(i).inverse(), c(l, j), sigma(i)]);
                let rhs = if i == j {
                    prod([c(j, j + 1).inverse(), c(l, j + 1)])
                } else if i == j - 1 {
                    prod([c(l, j - 1), c(j - 1, j)])
                } else if l == i + 1 {
                    prod([c(l - 1, j), c(l, j).inverse(), c(l + 1, j)])
                } else {
                    c(l, j)
                };
                p.rel(format!("{tag}(5)[i={i},l={l},j={j}]"), relator(lhs, rhs));
            }
        }
    }
    // (6) C_{i,i+1} = sigma_i^2
    for i in n + 1..n + m {
        let word = prod([c(i, i + 1).inverse(), sigma(i).pow(2)]);
        p.rel(format!("{tag}(6)[i={i}]"), word);
    }
}

/// Presentation of the mixed braid group `B_{n,m}(M)`.
pub fn mixed_presentation(
    surface: Surface,
    n: u32,
    m: u32,
) -> Result<Presentation, PresentationError> {
    check_positive("n", n)?;
    check_positive("m", m)?;
    let mut p = Presentation::new(surface, Family::Mixed, vec![n, m]);
    push_punctured_generators(&mut p, n, m);
    p.generators.push(Gen::A(1));
    p.generators.push(Gen::B(1));
    for i in 1..n + m {
        if i != n {
            p.generators.push(Gen::Sigma(i));
        }
    }

    // Type I: the kernel presentation.
    pure_relations(&mut p, surface, n + 1, n + m, "I-ppure");
    if m >= 2 {
        punctured_sigma_relations(&mut p, n, m, "I-pfull");
    }

    // Type II: relations (1)-(7) of B_n(M) plus the lifted surface relation.
    full_relations_1_to_7(&mut p, surface, n, "II-full");
    let c_side = prod((1..=m).map(|i| prod([c(1, n + i), c(2, n + i).inverse()])));
    let rhs = prod([sigma_chain(1, n - 1).inverse(), surface_commutator(surface)]);
    p.rel("II-surface".into(), relator(c_side, rhs).inverse());

    // Type III: conjugates of the kernel generators by a, b, sigma_i.
    for j in n + 1..=n + m {
        let lhs = prod([a(1).inverse(), a(j), a(1)]);
        p.rel(format!("III(2)[j={j}]"), relator(lhs, a(j)));

        let lhs = prod([a(1).inverse(), b(j), a(1)]);
        let rhs = prod([b(j), a(j), c(1, j).inverse(), c(2, j), a(j).inverse()]);
        p.rel(format!("III(3)[j={j}]"), relator(lhs, rhs));

        let lhs = prod([b(1).inverse(), a(j), b(1)]);
        let twist = prod([c(1, j), c(2, j).inverse()]);
        let twist = if surface == Surface::Torus { twist } else { twist.inverse() };
        let rhs = prod([a(j), b(j), twist, b(j).inverse()]);
        p.rel(format!("III(5)[j={j}]"), relator(lhs, rhs));

        let lhs = prod([b(1).inverse(), b(j), b(1)]);
        let rhs = match surface {
            Surface::Torus => b(j),
            Surface::Klein => prod([b(j), c(1, j), c(2, j).inverse()]),
        };
        p.rel(format!("III(4)[j={j}]"), relator(lhs, rhs));
    }
    for i in 1..n {
        for j in n + 1..=n + m {
            let lhs = prod([sigma(i).inverse(), a(j), sigma(i)]);
            p.rel(format!("III(6a)[i={i},j={j}]"), relator(lhs, a(j)));
            let lhs = prod([sigma(i).inverse(), b(j), sigma(i)]);
            p.rel(format!("III(6b)[i={i},j={j}]"), relator(lhs, b(j)));
        }
    }
    for j in n + 1..=n + m {
        for i in 1..j {
            // (8) a^-1 C_{i,j} a
            let lhs = prod([a(1).inverse(), c(i, j), a(1)]);
            let rhs = if i == 1 {
                prod([a(j), c(2, j).inverse(), c(1, j), a(j).inverse(), c(2, j)])
            } else {
                c(i, j)
            };
            p.rel(format!("III(8)[i={i},j={j}]"), relator(lhs, rhs));
            // (9) b^-1 C_{i,j} b
            let lhs = prod([b(1).inverse(), c(i, j), b(1)]);
            let rhs = if i == 1 {
                match surface {
                    Surface::Torus => prod([
                        c(2, j),
                        b(j),
                        c(1, j),
                        c(2, j).inverse(),
                        b(j).inverse(),
                    ]),
                    Surface::Klein => prod([
                        c(2, j),
                        b(j),
                        c(2, j),
                        c(1, j).inverse(),
                        b(j).inverse(),
                    ]),
                }
            } else {
                c(i, j)
            };
            p.rel(format!("III(9)[i={i},j={j}]"), relator(lhs, rhs));
        }
    }
    for i in 1..n {
        for j in n + 1..=n + m {
            for l in 1..j {
                let lhs = prod([sigma(i).inverse(), c(l, j), sigma(i)]);
                let rhs = if l == i + 1 {
                    prod([c(l - 1, j), c(l, j).inverse(), c(l + 1, j)])
                } else {
                    c(l, j)
                };
                p.rel(format!("III(7)[i={i},l={l},j={j}]"), relator(lhs, rhs));
            }
        }
    }
    for j in n + 1..n + m {
        p.rel(format!("III(10a)[j={j}]"), commutator(&a(1), &sigma(j)));
        p.rel(format!("III(10b)[j={j}]"), commutator(&b(1), &sigma(j)));
        for i in 1..n {
            p.rel(format!("III(10c)[i={i},j={j}]"), commutator(&sigma(i), &sigma(j)));
        }
    }
    Ok(p)
}

/// Presentation of `B_{n,m}(M) / Gamma_2(B_m(M - {x_1..x_n}))`.
///
/// Kernel cosets are written with absolute last-block indices: `x = a_{n+1}`,
/// `y = b_{n+1}`, `sigma-bar = s_{n+1}`, `rho_i = C_{i,n+1}`. For `m = 1` the
/// element sigma-bar is trivial and is dropped from the generating set.
pub fn quotient_gamma2_presentation(
    surface: Surface,
    n: u32,
    m: u32,
) -> Result<Presentation, PresentationError> {
    if n < 2 {
        return Err(PresentationError::Parameter("gamma2 quotient needs n >= 2".into()));
    }
    check_positive("m", m)?;
    let t = surface == Surface::Torus;
    let k = n + 1; // kernel coset index
    let has_sigma_bar = m >= 2;
    let mut p = Presentation::new(surface, Family::QuotientGamma2, vec![n, m]);
    p.generators.push(Gen::A(1));
    p.generators.push(Gen::B(1));
    p.generators.push(Gen::A(k));
    p.generators.push(Gen::B(k));
    if has_sigma_bar {
        p.generators.push(Gen::Sigma(k));
    }
    for i in 2..=n {
        p.generators.push(Gen::C(i, k));
    }
    for i in 1..n {
        p.generators.push(Gen::Sigma(i));
    }

    let x = || a(k);
    let y = || b(k);
    let rho = |i: u32| {
        // rho_1 = 1 (torus) or x^2 (Klein); rho_{n+1} = 1.
        if i == 1 {
            if t { Word::empty() } else { x().pow(2) }
        } else if i == n + 1 {
            Word::empty()
        } else {
            c(i, k)
        }
    };

    // (1) the surface relation.
    let lhs = prod([sigma_chain(1, n - 1).inverse(), surface_commutator(surface)]);
    let rhs = if t {
        rho(2).pow(-(m as i64))
    } else {
        prod([rho(2).pow(-(m as i64)), x().pow(2 * m as i64)])
    };
    p.rel("s(1)".into(), relator(lhs, rhs));

    // (2) relations (1)-(7) of B_n(M).
    full_relations_1_to_7(&mut p, surface, n, "s(2)-full");

    // (3) sigma-bar^2 = 1.
    if has_sigma_bar {
        p.rel("s(3)".into(), sigma(k).pow(2));
    }

    // (4) commutation relations.
    let mut comms: Vec<(String, Word, Word)> = vec![
        ("[x,y]".into(), x(), y()),
        ("[a,x]".into(), a(1), x()),
    ];
    for i in 2..=n {
        comms.push((format!("[x,r{i}]"), x(), rho(i)));
        comms.push((format!("[y,r{i}]"), y(), rho(i)));
        comms.push((format!("[a,r{i}]"), a(1), rho(i)));
        comms.push((format!("[b,r{i}]"), b(1), rho(i)));
        for kk in i + 1..=n {
            comms.push((format!("[r{i},r{kk}]"), rho(i), rho(kk)));
        }
    }
    for j in 1..n {
        comms.push((format!("[x,s{j}]"), x(), sigma(j)));
        comms.push((format!("[y,s{j}]"), y(), sigma(j)));
    }
    if has_sigma_bar {
        for j in 1..n {
            comms.push((format!("[sg,s{j}]"), sigma(k), sigma(j)));
        }
        comms.push(("[sg,x]".into(), sigma(k), x()));
        comms.push(("[sg,y]".into(), sigma(k), y()));
        for i in 2..=n {
            comms.push((format!("[sg,r{i}]"), sigma(k), rho(i)));
        }
        comms.push(("[sg,a]".into(), sigma(k), a(1)));
        comms.push(("[sg,b]".into(), sigma(k), b(1)));
    }
    for (name, u, v) in comms {
        p.rel(format!("s(4){name}"), commutator(&u, &v));
    }

    // (5) a^-1 y a
    let lhs = prod([a(1).inverse(), y(), a(1)]);
    let rhs = if t {
        prod([y(), rho(2)])
    } else {
        prod([y(), x().pow(-2), rho(2)])
    };
    p.rel("s(5)".into(), relator(lhs, rhs));

    // (6) b^-1 x b
    let lhs = prod([b(1).inverse(), x(), b(1)]);
    let rhs = if t {
        prod([x(), rho(2).inverse()])
    } else {
        prod([x().inverse(), rho(2)])
    };
    p.rel("s(6)".into(), relator(lhs, rhs));

    // (7) b^-1 y b
    let lhs = prod([b(1).inverse(), y(), b(1)]);
    let rhs = if t {
        y()
    } else {
        prod([y(), x().pow(2), rho(2).inverse()])
    };
    p.rel("s(7)".into(), relator(lhs, rhs));

    // (8) sigma_i^-1 rho_j sigma_i
    for i in 1..n {
        for j in 2..=n {
            let lhs = prod([sigma(i).inverse(), rho(j), sigma(i)]);
            let rhs = if i + 1 == j {
                prod([rho(j - 1), rho(j).inverse(), rho(j + 1)])
            } else {
                rho(j)
            };
            p.rel(format!("s(8)[i={i},j={j}]"), relator(lhs, rhs));
        }
    }
    Ok(p)
}

/// `C_{i,j}` as a word in the Artin generators:
/// `sigma_{j-1} ... sigma_{i+1} sigma_i^2 sigma_{i+1} ... sigma_{j-1}`,
/// the trivial braid when `i = j`.
pub fn cij_as_artin(i: u32, j: u32, n: u32) -> Result<Word, PresentationError> {
    if i == 0 || j == 0 || i > j || j > n {
        return Err(PresentationError::Parameter(format!(
            "cij_as_artin needs 1 <= i <= j <= n, got i={i}, j={j}, n={n}"
        )));
    }
    if i == j {
        return Ok(Word::empty());
    }
    let down = prod((i + 1..j).rev().map(sigma));
    let up = prod((i + 1..j).map(sigma));
    Ok(prod([down, sigma(i).pow(2), up]))
}

/// Verdict of a single oracle query.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TriState {
    True,
    False,
    /// Resource limit reached or input out of the oracle's domain.
    Undecided(String),
}

/// Per-relator report of [`verify_generator_map`].
#[derive(Debug, Clone)]
pub struct MapReport {
    pub entries: Vec<(String, TriState)>,
}

impl MapReport {
    pub fn all_pass(&self) -> bool {
        self.entries.iter().all(|(_, v)| *v == TriState::True)
    }

    pub fn failures(&self) -> Vec<&str> {
        self.entries
            .iter()
            .filter(|(_, v)| matches!(v, TriState::False))
            .map(|(l, _)| l.as_str())
            .collect()
    }

    pub fn undecided(&self) -> Vec<&str> {
        self.entries
            .iter()
            .filter(|(_, v)| matches!(v, TriState::Undecided(_)))
            .map(|(l, _)| l.as_str())
            .collect()
    }
}

/// Checks that a map of generators extends to a homomorphism: the image of
/// every relator must be trivial according to the supplied oracle. Oracle
/// failures and resource limits are reported per relator, never swallowed.
pub fn verify_generator_map(
    src: &Presentation,
    images: &BTreeMap<Gen, Word>,
    oracle: &mut dyn FnMut(&Word) -> TriState,
) -> MapReport {
    let mut entries = Vec::new();
    for r in &src.relators {
        let verdict = match r.word.substitute(images) {
            Ok(image) => oracle(&image),
            Err(e) => TriState::Undecided(e.to_string()),
        };
        entries.push((r.label.clone(), verdict));
    }
    MapReport { entries }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pure_torus_1_single_commutator_relator() {
        let p = pure_braid_presentation(Surface::Torus, 1).unwrap();
        assert_eq!(p.generators, vec![Gen::A(1), Gen::B(1)]);
        assert_eq!(p.relators.len(), 1);
        assert_eq!(p.relators[0].word, Word::parse("a1 b1 a1^-1 b1^-1").unwrap());
    }

    #[test]
    fn pure_klein_1_single_relator() {
        let p = pure_braid_presentation(Surface::Klein, 1).unwrap();
        assert_eq!(p.relators.len(), 1);
        assert_eq!(
            p.relators[0].word,
            Word::parse("b1 a1^-1 b1^-1 a1^-1").unwrap()
        );
    }

    #[test]
    fn pure_torus_3_generator_count_and_alphabet() {
        let p = pure_braid_presentation(Surface::Torus, 3).unwrap();
        // 2n + n(n-1)/2
        assert_eq!(p.generators.len(), 9);
        assert!(p.relators_in_alphabet());
        // Relator counts per family, from enumerating the stated ranges at n=3:
        // (1),(2),(6),(7): C(3,2)=3 pairs each; (3),(8): triples with
        // (i<j<k | j<k<i | j<=i<k): j<k pairs (1,2),(1,3),(2,3) and i in 1..3
        // minus i=k: (j,k)=(1,2): i=1,2 ok, i=3 is j<k<i ok -> 3;
        // (1,3): i=1,2 ok (j<=i<k), i=3=k skip -> 2; (2,3): i=1 (i<j<k), i=2 -> 2; total 7.
        // (4): n=3 admits only (i,l,j,k) = (1,2,2,3) [moved] and (1,2,1,3)
        // [j<=i<l<k] -> 2. (5): 3.
        let count = |fam: &str| p.relators.iter().filter(|r| r.label.starts_with(fam)).count();
        assert_eq!(count("pure(1)"), 3);
        assert_eq!(count("pure(2)"), 3);
        assert_eq!(count("pure(3)"), 7);
        assert_eq!(count("pure(4)"), 2);
        assert_eq!(count("pure(5)"), 3);
        assert_eq!(count("pure(6)"), 3);
        assert_eq!(count("pure(7)"), 3);
        assert_eq!(count("pure(8)"), 7);
    }

    #[test]
    fn full_surface_relators() {
        let p = full_braid_presentation(Surface::Torus, 2).unwrap();
        let surf = p.relators.iter().find(|r| r.label == "full(8)").unwrap();
        assert_eq!(
            surf.word,
            Word::parse("s1^2 a1 b1 a1^-1 b1^-1").unwrap()
        );
        let p = full_braid_presentation(Surface::Klein, 2).unwrap();
        let surf = p.relators.iter().find(|r| r.label == "full(8)").unwrap();
        assert_eq!(surf.word, Word::parse("s1^2 a1 b1 a1 b1^-1").unwrap());
        // n = 1: empty sigma word.
        let p = full_braid_presentation(Surface::Torus, 1).unwrap();
        assert_eq!(p.generators, vec![Gen::A(1), Gen::B(1)]);
        let surf = p.relators.iter().find(|r| r.label == "full(8)").unwrap();
        assert_eq!(surf.word, Word::parse("a1 b1 a1^-1 b1^-1").unwrap());
    }

    #[test]
    fn punctured_pure_m1_single_surface_relator() {
        let p = punctured_pure_presentation(Surface::Torus, 3, 1).unwrap();
        assert_eq!(p.relators.len(), 1);
        assert_eq!(
            p.relators[0].word,
            Word::parse("a4 b4 C1.4 a4^-1 b4^-1").unwrap()
        );
        let p = punctured_pure_presentation(Surface::Klein, 3, 1).unwrap();
        assert_eq!(p.relators.len(), 1);
        assert_eq!(
            p.relators[0].word,
            Word::parse("b4 C1.4 a4^-1 b4^-1 a4^-1").unwrap()
        );
    }

    #[test]
    fn punctured_pure_generator_count() {
        // (T, 2, 2): 2*2 a/b gens + C_{i,j} with j in {3,4}: (2 + 3) = 5 -> 9.
        let p = punctured_pure_presentation(Surface::Torus, 2, 2).unwrap();
        assert_eq!(p.generators.len(), 9);
        assert!(p.relators_in_alphabet());
    }

    #[test]
    fn punctured_full_examples() {
        let p = punctured_full_presentation(Surface::Torus, 1, 2).unwrap();
        let r = p.relators.iter().find(|r| r.label == "pfull(6)[i=2]").unwrap();
        assert_eq!(r.word, Word::parse("C2.3^-1 s2^2").unwrap());
        assert!(p.relators_in_alphabet());

        let p = punctured_full_presentation(Surface::Klein, 1, 2).unwrap();
        let r = p.relators.iter().find(|r| r.label == "pfull(4)[i=2,j=3]").unwrap();
        assert_eq!(r.word, Word::parse("s2^-1 b3 s2 b2^-1 s2^2").unwrap());

        let p = punctured_full_presentation(Surface::Torus, 2, 3).unwrap();
        let r = p.relators.iter().find(|r| r.label == "pfull(1)[i=3]").unwrap();
        assert_eq!(r.word, Word::parse("s3 s4 s3 s4^-1 s3^-1 s4^-1").unwrap());

        assert!(punctured_full_presentation(Surface::Torus, 1, 1).is_err());
    }

    #[test]
    fn mixed_examples() {
        let p = mixed_presentation(Surface::Torus, 2, 2).unwrap();
        let surf = p.relators.iter().find(|r| r.label == "II-surface").unwrap();
        // (prod C)^-1 (s1^2)^-1 b a b^-1 a^-1, freely reduced.
        let expected = prod([
            prod([c(1, 3), c(2, 3).inverse(), c(1, 4), c(2, 4).inverse()]).inverse(),
            sigma_chain(1, 1).inverse(),
            surface_commutator(Surface::Torus),
        ]);
        assert_eq!(surf.word, expected);
        assert!(p.relators_in_alphabet());

        let p = mixed_presentation(Surface::Klein, 2, 2).unwrap();
        let surf = p.relators.iter().find(|r| r.label == "II-surface").unwrap();
        let expected = prod([
            prod([c(1, 3), c(2, 3).inverse(), c(1, 4), c(2, 4).inverse()]).inverse(),
            sigma_chain(1, 1).inverse(),
            surface_commutator(Surface::Klein),
        ]);
        assert_eq!(surf.word, expected);

        // (T, 1, 2): a commutes with a_j.
        let p = mixed_presentation(Surface::Torus, 1, 2).unwrap();
        let r = p.relators.iter().find(|r| r.label == "III(2)[j=2]").unwrap();
        assert_eq!(r.word, Word::parse("a1^-1 a2 a1 a2^-1").unwrap());
        assert!(p.relators_in_alphabet());
    }

    #[test]
    fn gamma2_examples() {
        let p = quotient_gamma2_presentation(Surface::Torus, 2, 3).unwrap();
        let surf = p.relators.iter().find(|r| r.label == "s(1)").unwrap();
        assert_eq!(
            surf.word,
            Word::parse("s1^-2 b1 a1 b1^-1 a1^-1 C2.3^3").unwrap()
        );
        let p = quotient_gamma2_presentation(Surface::Klein, 2, 3).unwrap();
        let surf = p.relators.iter().find(|r| r.label == "s(1)").unwrap();
        assert_eq!(
            surf.word,
            Word::parse("s1^-2 b1 a1^-1 b1^-1 a1^-1 a3^-6 C2.3^3").unwrap()
        );
        let sq = p.relators.iter().find(|r| r.label == "s(3)").unwrap();
        assert_eq!(sq.word, Word::parse("s3^2").unwrap());
        assert!(p.relators_in_alphabet());

        // m = 1 drops sigma-bar.
        let p = quotient_gamma2_presentation(Surface::Torus, 3, 1).unwrap();
        assert!(!p.generators.contains(&Gen::Sigma(4)));
        assert!(p.relators.iter().all(|r| r.label != "s(3)"));
    }

    #[test]
    fn cij_examples() {
        assert_eq!(cij_as_artin(1, 2, 5).unwrap(), Word::parse("s1^2").unwrap());
        assert_eq!(
            cij_as_artin(1, 3, 5).unwrap(),
            Word::parse("s2 s1^2 s2").unwrap()
        );
        assert_eq!(cij_as_artin(4, 4, 5).unwrap(), Word::empty());
        assert!(cij_as_artin(3, 1, 5).is_err());
        assert!(cij_as_artin(1, 6, 5).is_err());
    }

    #[test]
    fn abelianized_matrix_rows() {
        let p = pure_braid_presentation(Surface::Torus, 1).unwrap();
        let m = p.abelianized_relation_matrix();
        assert_eq!(m.row(0), &[0, 0]);
        let p = full_braid_presentation(Surface::Torus, 2).unwrap();
        let m = p.abelianized_relation_matrix();
        let surf_row = p
            .relators
            .iter()
            .position(|r| r.label == "full(8)")
            .unwrap();
        // Columns: a, b, s1. The commutator abelianizes away, leaving 2 s1.
        assert_eq!(m.row(surf_row), &[0, 0, 2]);
    }

    #[test]
    fn text_round_trip() {
        let p = mixed_presentation(Surface::Klein, 2, 2).unwrap();
        let text = p.to_text();
        let q = Presentation::from_text(&text).unwrap();
        assert_eq!(q.surface, p.surface);
        assert_eq!(q.family, p.family);
        assert_eq!(q.params, p.params);
        assert_eq!(q.generators, p.generators);
        let words: Vec<&Word> = p.relators.iter().map(|r| &r.word).collect();
        let parsed: Vec<&Word> = q.relators.iter().map(|r| &r.word).collect();
        assert_eq!(words, parsed);
    }
}
