//! Reference tables of extremal polynomials shipped with the crate, and
//! their comparison against computed polynomials.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::exact::{format_rational, parse_rational, MultiIndex, Polynomial, Rational};
use crate::realization::GroupContext;

pub const R2S6_P3: &str = include_str!("../fixtures/r2s6_p3.txt");
pub const R3S4_QUADRICS: &str = include_str!("../fixtures/r3s4_quadrics.txt");

/// `coeff * x^mono * v_slot` (0-based slot).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GoldenTerm {
    pub slot: usize,
    pub coeff: Rational,
    pub mono: MultiIndex,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Erratum {
    Remove(GoldenTerm),
    Add(GoldenTerm),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GoldenBlock {
    /// 0-based index `i` of `P_i`.
    pub index: usize,
    pub display: Vec<GoldenTerm>,
    pub errata: Vec<Erratum>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GoldenTable {
    pub rank: usize,
    pub step: usize,
    pub n: usize,
    /// Slots assumed zero by the table (0-based).
    pub zero_slots: BTreeSet<usize>,
    pub blocks: Vec<GoldenBlock>,
}

/// First disagreement between a reference and a computed polynomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mismatch {
    pub index: usize,
    pub slot: usize,
    pub mono: MultiIndex,
    pub expected: Rational,
    pub computed: Rational,
}

impl std::fmt::Display for Mismatch {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mono = Polynomial::monomial(self.mono.clone(), Rational::from_integer(1.into()));
        write!(
            f,
            "P_{} coefficient of v{} * ({mono}): expected {}, computed {}",
            self.index + 1,
            self.slot + 1,
            format_rational(&self.expected),
            format_rational(&self.computed)
        )
    }
}

impl std::fmt::Display for GoldenTerm {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mono = Polynomial::monomial(self.mono.clone(), Rational::from_integer(1.into()));
        write!(f, "v{} {} {mono}", self.slot + 1, format_rational(&self.coeff))
    }
}

impl std::fmt::Display for Erratum {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Erratum::Add(t) => write!(f, "add {t}"),
            Erratum::Remove(t) => write!(f, "remove {t}"),
        }
    }
}

fn parse_monomial(s: &str, n: usize) -> Result<MultiIndex> {
    let mut e = vec![0u16; n];
    if s == "1" {
        return Ok(MultiIndex::from_exponents(e));
    }
    let bad = || Error::Parse(format!("bad monomial {s:?}"));
    for factor in s.split('*') {
        let (var, pow) = factor.split_once('^').unwrap_or((factor, "1"));
        let k: usize = var.strip_prefix('x').ok_or_else(bad)?.parse().map_err(|_| bad())?;
        let p: u16 = pow.parse().map_err(|_| bad())?;
        if k == 0 || k > n {
            return Err(Error::IndexOutOfRange { index: k, len: n });
        }
        e[k - 1] += p;
    }
    Ok(MultiIndex::from_exponents(e))
}

fn parse_term(words: &[&str], n: usize) -> Result<GoldenTerm> {
    let [slot, coeff, mono] = words else {
        return Err(Error::Parse(format!(
            "expected `<slot> <coeff> <monomial>`, got {words:?}"
        )));
    };
    let slot: usize = slot
        .strip_prefix('v')
        .and_then(|k| k.parse().ok())
        .ok_or_else(|| Error::Parse(format!("bad slot {slot:?}")))?;
    if slot == 0 || slot > n {
        return Err(Error::IndexOutOfRange { index: slot, len: n });
    }
    Ok(GoldenTerm {
        slot: slot - 1,
        coeff: parse_rational(coeff)?,
        mono: parse_monomial(mono, n)?,
    })
}

impl GoldenTable {
    pub fn parse(text: &str) -> Result<Self> {
        let mut rank = None;
        let mut step = None;
        let mut zero_slots = BTreeSet::new();
        let mut blocks: Vec<GoldenBlock> = Vec::new();
        let mut section = "";
        let mut n = 0;
        for raw in text.lines() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let words: Vec<&str> = line.split_whitespace().collect();
            match words[0] {
                "rank" => rank = words.get(1).and_then(|w| w.parse().ok()),
                "step" => step = words.get(1).and_then(|w| w.parse().ok()),
                "zero-slots" => {
                    let (a, b) = words
                        .get(1)
                        .and_then(|w| w.split_once('-'))
                        .and_then(|(a, b)| Some((a.parse::<usize>().ok()?, b.parse::<usize>().ok()?)))
                        .ok_or_else(|| Error::Parse(format!("bad zero-slots line {line:?}")))?;
                    zero_slots.extend(a - 1..b);
                }
                "index" => {
                    let (r, s) = rank
                        .zip(step)
                        .ok_or_else(|| Error::Parse("rank and step must come first".into()))?;
                    n = crate::hall::witt_dimensions(r, s).iter().sum();
                    let i: usize = words
                        .get(1)
                        .and_then(|w| w.parse().ok())
                        .ok_or_else(|| Error::Parse(format!("bad index line {line:?}")))?;
                    blocks.push(GoldenBlock {
                        index: i - 1,
                        display: Vec::new(),
                        errata: Vec::new(),
                    });
                    section = "";
                }
                "[display]" => section = "display",
                "[errata]" => section = "errata",
                _ => {
                    let block = blocks
                        .last_mut()
                        .ok_or_else(|| Error::Parse("term before any index line".into()))?;
                    match (section, words[0]) {
                        ("display", _) => block.display.push(parse_term(&words, n)?),
                        ("errata", "add") => block.errata.push(Erratum::Add(parse_term(&words[1..], n)?)),
                        ("errata", "remove") => block.errata.push(Erratum::Remove(parse_term(&words[1..], n)?)),
                        _ => return Err(Error::Parse(format!("unexpected line {line:?}"))),
                    }
                }
            }
        }
        let (rank, step) = rank
            .zip(step)
            .ok_or_else(|| Error::Parse("missing rank or step".into()))?;
        Ok(GoldenTable {
            rank,
            step,
            n,
            zero_slots,
            blocks,
        })
    }

    pub fn r2s6_p3() -> Self {
        Self::parse(R2S6_P3).expect("shipped fixture parses")
    }

    pub fn r3s4_quadrics() -> Self {
        Self::parse(R3S4_QUADRICS).expect("shipped fixture parses")
    }
}

fn slices_of(n: usize, terms: &[GoldenTerm]) -> Vec<Polynomial> {
    let mut out = vec![Polynomial::zero(n); n];
    for t in terms {
        out[t.slot].add_term(t.mono.clone(), t.coeff.clone());
    }
    out
}

impl GoldenBlock {
    /// The table as printed, one polynomial in `x` per slot.
    pub fn display_slices(&self, n: usize) -> Vec<Polynomial> {
        slices_of(n, &self.display)
    }

    /// The table with the errata applied.
    pub fn corrected_slices(&self, n: usize) -> Result<Vec<Polynomial>> {
        let mut out = self.display_slices(n);
        for e in &self.errata {
            match e {
                Erratum::Add(t) => out[t.slot].add_term(t.mono.clone(), t.coeff.clone()),
                Erratum::Remove(t) => {
                    if out[t.slot].coeff(&t.mono) != t.coeff {
                        return Err(Error::Parse(format!(
                            "erratum removes a term absent from the display: v{} {}",
                            t.slot + 1,
                            t.mono
                        )));
                    }
                    out[t.slot].add_term(t.mono.clone(), -t.coeff.clone());
                }
            }
        }
        Ok(out)
    }
}

/// Compares computed slices with reference slices over all slots outside
/// `zero_slots`; returns every mismatching coefficient in slot order.
pub fn compare_slices(
    index: usize,
    computed: &[Polynomial],
    expected: &[Polynomial],
    zero_slots: &BTreeSet<usize>,
) -> Vec<Mismatch> {
    let mut out = Vec::new();
    for (slot, (c, e)) in computed.iter().zip(expected).enumerate() {
        if zero_slots.contains(&slot) || c == e {
            continue;
        }
        let monos: BTreeSet<&MultiIndex> = c.terms().map(|t| t.0).chain(e.terms().map(|t| t.0)).collect();
        for m in monos {
            let (cc, ee) = (c.coeff(m), e.coeff(m));
            if cc != ee {
                out.push(Mismatch {
                    index,
                    slot,
                    mono: m.clone(),
                    expected: ee,
                    computed: cc,
                });
            }
        }
    }
    out
}

/// Outcome of checking one reference table against a group.
#[derive(Clone, Debug)]
pub struct GoldenReport {
    /// Mismatches against the printed table (expected to be exactly the errata).
    pub against_display: Vec<Mismatch>,
    /// Mismatches against the corrected table (expected empty).
    pub against_corrected: Vec<Mismatch>,
}

impl GoldenReport {
    pub fn passed(&self) -> bool {
        self.against_corrected.is_empty()
    }
}

pub fn check_table(ctx: &GroupContext, table: &GoldenTable) -> Result<GoldenReport> {
    if (ctx.rank(), ctx.step()) != (table.rank, table.step) {
        return Err(Error::InvalidParameters(format!(
            "table is for rank {} step {}, group is rank {} step {}",
            table.rank,
            table.step,
            ctx.rank(),
            ctx.step()
        )));
    }
    let n = ctx.dim();
    let mut against_display = Vec::new();
    let mut against_corrected = Vec::new();
    for block in &table.blocks {
        let computed = ctx.extremal_polynomial(block.index)?.slices();
        against_display.extend(compare_slices(
            block.index,
            computed,
            &block.display_slices(n),
            &table.zero_slots,
        ));
        against_corrected.extend(compare_slices(
            block.index,
            computed,
            &block.corrected_slices(n)?,
            &table.zero_slots,
        ));
    }
    Ok(GoldenReport {
        against_display,
        against_corrected,
    })
}

impl GoldenReport {
    /// True when the printed table differs from the computed one at exactly
    /// the coefficients touched by the errata.
    pub fn errata_account_for_display(&self, table: &GoldenTable) -> bool {
        let seen: BTreeSet<(usize, usize, &MultiIndex)> = self
            .against_display
            .iter()
            .map(|m| (m.index, m.slot, &m.mono))
            .collect();
        let touched: BTreeSet<(usize, usize, &MultiIndex)> = table
            .blocks
            .iter()
            .flat_map(|b| {
                b.errata.iter().map(move |e| {
                    let (Erratum::Add(t) | Erratum::Remove(t)) = e;
                    (b.index, t.slot, &t.mono)
                })
            })
            .collect();
        seen == touched
    }
}

/// Justifies an erratum from the Hall basis alone, without the vector
/// fields. An added term `c x^alpha v_k` must have `X_k` equal to the
/// iterated bracket `[X_i, X_alpha]` (its chain extends the chain of `X_i`
/// by the expansion of `alpha`) and `c = (-1)^{|alpha|}/alpha!`. A removed
/// term must violate the grading `d(k) = d(i) + d(alpha)`.
pub fn erratum_is_structural(ctx: &GroupContext, index: usize, erratum: &Erratum) -> Result<bool> {
    let basis = ctx.basis();
    let degrees = basis.degrees();
    let me = basis.element(index)?;
    match erratum {
        Erratum::Add(t) => {
            let target = basis.element(t.slot)?;
            let mut chain = me.chain.clone();
            chain.extend(t.mono.expand());
            let sign = if t.mono.total() % 2 == 0 { 1 } else { -1 };
            let coeff = Rational::from_integer(sign.into()) / t.mono.factorial_rational();
            Ok(target.ell0 == me.ell0 && target.chain == chain && t.coeff == coeff)
        }
        Erratum::Remove(t) => {
            let d_alpha = crate::exact::weighted_degree(&t.mono, &degrees)?;
            Ok(degrees[t.slot] != degrees[index] + d_alpha)
        }
    }
}
