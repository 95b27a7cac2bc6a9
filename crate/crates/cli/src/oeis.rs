//! Comparison of computed sequences against OEIS b-files.
//!
//! A small registry maps sequence ids to the derivations that should
//! reproduce them. Prefixes for the registered ids ship with the binary;
//! fetching from oeis.org happens only when explicitly enabled.

use std::fmt;

use homcount::numtheory::sigma;
use homcount::{count_tuples, count_tuples_normalized, lambda_table, Nat};
use thiserror::Error;

use crate::bfile::{BFile, BFileError};

#[derive(Error, Debug)]
pub enum OeisError {
    #[error("unknown sequence id {0}; pass --derivation to compare anyway")]
    UnknownId(String),
    #[error("no bundled data for {0}; network access is disabled (use --fetch)")]
    NetworkDisabled(String),
    #[error("malformed b-file for {id}: {source}")]
    Malformed {
        id: String,
        #[source]
        source: BFileError,
    },
    #[error("fetching {url} failed: {message}")]
    Fetch { url: String, message: String },
    #[error("b-file for {0} has no entries in range")]
    Empty(String),
    #[error("invalid sequence id {0:?}; expected A followed by six digits")]
    InvalidId(String),
}

/// A way of producing a sequence from the library.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Derivation {
    /// `sigma(n)`, from `n = 1`.
    Sigma,
    /// `lambda_r(n)`, from `n = 1`.
    Lambda(u32),
    /// `T_r(n)`, from `n = 0`.
    Tuples(u32),
    /// `T_r(n)/n!`, from `n = 0`.
    TuplesNormalized(u32),
}

impl Derivation {
    /// Index of the first term.
    pub fn origin(&self) -> i64 {
        match self {
            Derivation::Sigma | Derivation::Lambda(_) => 1,
            Derivation::Tuples(_) | Derivation::TuplesNormalized(_) => 0,
        }
    }

    /// Terms for indices `origin..=max_index` (empty if `max_index < origin`).
    pub fn compute(&self, max_index: i64) -> Vec<Nat> {
        if max_index < self.origin() {
            return Vec::new();
        }
        let max = max_index as usize;
        match *self {
            Derivation::Sigma => (1..=max as u64).map(|n| sigma(n).expect("n >= 1")).collect(),
            Derivation::Lambda(r) => lambda_table(r, max).into_values().into_values(),
            Derivation::Tuples(r) => count_tuples(r, max),
            Derivation::TuplesNormalized(r) => count_tuples_normalized(r, max),
        }
    }
}

impl fmt::Display for Derivation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Derivation::Sigma => write!(f, "sigma(n)"),
            Derivation::Lambda(r) => write!(f, "lambda_{r}(n)"),
            Derivation::Tuples(r) => write!(f, "T_{r}(n)"),
            Derivation::TuplesNormalized(r) => write!(f, "T_{r}(n)/n!"),
        }
    }
}

pub struct KnownSequence {
    pub id: &'static str,
    pub description: &'static str,
    /// Candidate derivations, tried in order; more than one when the match
    /// is what we want to find out.
    pub derivations: &'static [Derivation],
    pub bundled: Option<&'static str>,
}

pub const REGISTRY: &[KnownSequence] = &[
    KnownSequence {
        id: "A000041",
        description: "partition numbers",
        derivations: &[Derivation::TuplesNormalized(2)],
        bundled: Some(include_str!("../testdata/oeis/A000041.txt")),
    },
    KnownSequence {
        id: "A000142",
        description: "factorials",
        derivations: &[Derivation::Tuples(1)],
        bundled: Some(include_str!("../testdata/oeis/A000142.txt")),
    },
    KnownSequence {
        id: "A000203",
        description: "sum of divisors",
        derivations: &[Derivation::Sigma],
        bundled: Some(include_str!("../testdata/oeis/A000203.txt")),
    },
    KnownSequence {
        id: "A001001",
        description: "subgroups of index n in Z^3",
        derivations: &[Derivation::Lambda(3)],
        bundled: Some(include_str!("../testdata/oeis/A001001.txt")),
    },
    KnownSequence {
        id: "A061256",
        description: "Euler transform of sigma",
        derivations: &[Derivation::TuplesNormalized(3)],
        bundled: Some(include_str!("../testdata/oeis/A061256.txt")),
    },
    KnownSequence {
        id: "A079860",
        description: "commuting triples in S_n (which normalization is not assumed)",
        derivations: &[Derivation::TuplesNormalized(3), Derivation::Tuples(3)],
        bundled: None,
    },
];

pub fn lookup(id: &str) -> Option<&'static KnownSequence> {
    REGISTRY.iter().find(|s| s.id.eq_ignore_ascii_case(id))
}

/// Normalize `a61256`, `A061256` and `61256` to `A061256`.
pub fn normalize_id(id: &str) -> Result<String, OeisError> {
    let digits = id.trim().trim_start_matches(['A', 'a']);
    if digits.is_empty() || digits.len() > 6 || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return Err(OeisError::InvalidId(id.to_string()));
    }
    Ok(format!("A{digits:0>6}"))
}

pub fn parse_bfile(id: &str, text: &str) -> Result<BFile, OeisError> {
    text.parse().map_err(|source| OeisError::Malformed {
        id: id.to_string(),
        source,
    })
}

/// Download `https://oeis.org/Annnnnn/bnnnnnn.txt`.
pub fn fetch_bfile(id: &str) -> Result<BFile, OeisError> {
    let url = format!("https://oeis.org/{id}/b{}.txt", &id[1..]);
    let fail = |message: String| OeisError::Fetch {
        url: url.clone(),
        message,
    };
    let text = ureq::get(&url)
        .call()
        .map_err(|e| fail(e.to_string()))?
        .body_mut()
        .read_to_string()
        .map_err(|e| fail(e.to_string()))?;
    parse_bfile(id, &text)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mismatch {
    pub index: i64,
    pub expected: Nat,
    pub computed: Nat,
}

/// Result of comparing one derivation against one b-file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Comparison {
    pub derivation: Derivation,
    /// Entries compared and equal before the first mismatch.
    pub matched: usize,
    pub first_mismatch: Option<Mismatch>,
}

impl Comparison {
    pub fn is_match(&self) -> bool {
        self.first_mismatch.is_none()
    }
}

impl fmt::Display for Comparison {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.first_mismatch {
            None => write!(f, "{}: match ({} terms)", self.derivation, self.matched),
            Some(m) => write!(
                f,
                "{}: MISMATCH at n = {} (b-file {}, computed {}) after {} matching terms",
                self.derivation, m.index, m.expected, m.computed, self.matched
            ),
        }
    }
}

/// Compare b-file entries with the derivation; entries below the
/// derivation's origin are skipped.
pub fn compare(bfile: &BFile, derivation: Derivation) -> Comparison {
    let origin = derivation.origin();
    let last = bfile.last_index().unwrap_or(origin - 1);
    let computed = derivation.compute(last);
    let mut matched = 0;
    for (index, expected) in bfile.entries() {
        if *index < origin {
            continue;
        }
        let got = &computed[(*index - origin) as usize];
        if got != expected {
            return Comparison {
                derivation,
                matched,
                first_mismatch: Some(Mismatch {
                    index: *index,
                    expected: expected.clone(),
                    computed: got.clone(),
                }),
            };
        }
        matched += 1;
    }
    Comparison {
        derivation,
        matched,
        first_mismatch: None,
    }
}

#[derive(Clone, Debug)]
pub struct OeisReport {
    pub id: String,
    pub source: String,
    pub comparisons: Vec<Comparison>,
}

impl OeisReport {
    /// True when at least one candidate derivation matches.
    pub fn any_match(&self) -> bool {
        self.comparisons.iter().any(Comparison::is_match)
    }
}

impl fmt::Display for OeisReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{} ({})", self.id, self.source)?;
        for c in &self.comparisons {
            writeln!(f, "  {c}")?;
        }
        let verdict = if self.any_match() { "match" } else { "mismatch" };
        write!(f, "result: {verdict}")
    }
}

pub struct CheckRequest<'a> {
    pub id: &'a str,
    /// Compare only indices up to this bound.
    pub max_index: Option<i64>,
    pub fetch: bool,
    /// Read the b-file from here instead of bundled data or the network.
    pub bfile_text: Option<&'a str>,
    /// Overrides the registry's derivations.
    pub derivation: Option<Derivation>,
}

pub fn check(req: &CheckRequest<'_>) -> Result<OeisReport, OeisError> {
    let id = normalize_id(req.id)?;
    let known = lookup(&id);
    let derivations: Vec<Derivation> = match (req.derivation, known) {
        (Some(d), _) => vec![d],
        (None, Some(k)) => k.derivations.to_vec(),
        (None, None) => return Err(OeisError::UnknownId(id)),
    };
    let (mut bfile, source) = if let Some(text) = req.bfile_text {
        (parse_bfile(&id, text)?, "local file".to_string())
    } else if let Some(text) = known.and_then(|k| k.bundled) {
        (parse_bfile(&id, text)?, "bundled prefix".to_string())
    } else if req.fetch {
        (fetch_bfile(&id)?, "oeis.org".to_string())
    } else {
        return Err(OeisError::NetworkDisabled(id));
    };
    if let Some(max) = req.max_index {
        bfile.truncate_to(max);
    }
    if bfile.is_empty() {
        return Err(OeisError::Empty(id));
    }
    let comparisons = derivations.into_iter().map(|d| compare(&bfile, d)).collect();
    Ok(OeisReport {
        id,
        source,
        comparisons,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn req(id: &str) -> CheckRequest<'_> {
        CheckRequest {
            id,
            max_index: None,
            fetch: false,
            bfile_text: None,
            derivation: None,
        }
    }

    #[test]
    fn ids_normalize() {
        assert_eq!(normalize_id("a61256").unwrap(), "A061256");
        assert_eq!(normalize_id("A001001").unwrap(), "A001001");
        assert!(normalize_id("B12").is_err());
        assert!(normalize_id("A").is_err());
    }

    #[test]
    fn bundled_sequences_match() {
        for k in REGISTRY.iter().filter(|k| k.bundled.is_some()) {
            let mut r = req(k.id);
            r.max_index = Some(60);
            let report = check(&r).unwrap();
            assert!(report.any_match(), "{report}");
        }
    }

    #[test]
    fn unknown_and_offline_errors() {
        assert!(matches!(check(&req("A999999")), Err(OeisError::UnknownId(_))));
        assert!(matches!(check(&req("A079860")), Err(OeisError::NetworkDisabled(_))));
    }

    #[test]
    fn reports_first_mismatch() {
        let text = "0 1\n1 1\n2 4\n3 9\n4 21\n";
        let mut r = req("A061256");
        r.bfile_text = Some(text);
        let report = check(&r).unwrap();
        assert!(!report.any_match());
        let c = &report.comparisons[0];
        assert_eq!(c.matched, 3);
        assert_eq!(
            c.first_mismatch,
            Some(Mismatch {
                index: 3,
                expected: Nat::from(9u32),
                computed: Nat::from(8u32)
            })
        );
    }

    #[test]
    fn candidate_derivations_are_all_reported() {
        // T_3(n) itself, as a user-supplied file for the ambiguous id
        let text = "0 1\n1 1\n2 8\n3 48\n4 504\n5 4680\n";
        let mut r = req("A079860");
        r.bfile_text = Some(text);
        let report = check(&r).unwrap();
        assert_eq!(report.comparisons.len(), 2);
        assert!(!report.comparisons[0].is_match());
        assert!(report.comparisons[1].is_match());
        assert!(report.any_match());
    }

    #[test]
    fn derivation_override_and_origin_skip() {
        // index 0 is below lambda's origin and is ignored
        let text = "0 5\n1 1\n2 7\n3 13\n";
        let mut r = req("A123456");
        r.bfile_text = Some(text);
        r.derivation = Some(Derivation::Lambda(3));
        let report = check(&r).unwrap();
        assert!(report.any_match());
        assert_eq!(report.comparisons[0].matched, 3);
    }
}
