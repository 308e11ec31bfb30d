//! Text parsers for group specs and sets, and survey report serialization.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::{make_group, GroupType};
use crate::oracle::{SghReport, Verdict};
use crate::subset::Subset;
use crate::sumset::hfold;

pub const REPORT_VERSION: u32 = 1;

/// `"2,6"`, `"2 6"`, `"(2,6)"` or `"2x6"`; moduli need not form a divisor
/// chain.
pub fn parse_group_spec(spec: &str) -> Result<GroupType> {
    let inner = spec.trim();
    let inner = inner
        .strip_prefix('(')
        .and_then(|s| s.strip_suffix(')'))
        .unwrap_or(inner);
    let moduli = inner
        .split(|c: char| c == ',' || c == 'x' || c.is_whitespace())
        .filter(|t| !t.is_empty())
        .map(|t| {
            t.parse::<u64>()
                .map_err(|_| Error::Parse(format!("bad modulus {t:?} in group spec {spec:?}")))
        })
        .collect::<Result<Vec<_>>>()?;
    if moduli.is_empty() {
        return Err(Error::Parse(format!("empty group spec {spec:?}")));
    }
    make_group(&moduli)
}

/// Either element indices `"0,1,4,5"` or coordinate tuples
/// `"(0 0),(0 1),(1 0)"`.
pub fn parse_set(g: &GroupType, text: &str) -> Result<Subset> {
    let text = text.trim();
    let mut set = Subset::empty(g.order());
    if text.contains('(') {
        let mut rest = text;
        loop {
            rest = rest.trim_start_matches(|c: char| c == ',' || c.is_whitespace());
            if rest.is_empty() {
                break;
            }
            let body = rest
                .strip_prefix('(')
                .ok_or_else(|| Error::Parse(format!("expected '(' at {rest:?}")))?;
            let end = body
                .find(')')
                .ok_or_else(|| Error::Parse(format!("unclosed tuple in {text:?}")))?;
            let coords = body[..end]
                .split(|c: char| c == ',' || c.is_whitespace())
                .filter(|t| !t.is_empty())
                .map(|t| {
                    t.parse::<u64>()
                        .map_err(|_| Error::Parse(format!("bad coordinate {t:?}")))
                })
                .collect::<Result<Vec<_>>>()?;
            set.insert(g.element_from_coords(&coords)?.index());
            rest = &body[end + 1..];
        }
    } else {
        for t in text.split(|c: char| c == ',' || c.is_whitespace()) {
            if t.is_empty() {
                continue;
            }
            let i: usize = t
                .parse()
                .map_err(|_| Error::Parse(format!("bad element index {t:?}")))?;
            set.insert(g.element(i)?.index());
        }
    }
    Ok(set)
}

/// `"2,3"`
pub fn parse_h_list(text: &str) -> Result<Vec<usize>> {
    let hs = text
        .split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| match t.parse::<usize>() {
            Ok(0) => Err(Error::InvalidH(0)),
            Ok(h) => Ok(h),
            Err(_) => Err(Error::Parse(format!("bad h {t:?}"))),
        })
        .collect::<Result<Vec<_>>>()?;
    if hs.is_empty() {
        return Err(Error::Parse("empty h list".into()));
    }
    Ok(hs)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Parameters {
    pub max_order: usize,
    pub h: Vec<usize>,
    pub budget: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SurveyReport {
    pub version: u32,
    pub parameters: Parameters,
    pub rows: Vec<SghReport>,
}

fn join(xs: &[usize]) -> String {
    xs.iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join(";")
}

fn opt<T: ToString>(x: &Option<T>) -> String {
    x.as_ref().map(T::to_string).unwrap_or_default()
}

fn verdict_name(v: Verdict) -> &'static str {
    match v {
        Verdict::Match => "match",
        Verdict::Mismatch => "mismatch",
        Verdict::FormulaUnavailable => "formula-unavailable",
        Verdict::BudgetExceeded => "budget-exceeded",
    }
}

impl SurveyReport {
    pub fn new(max_order: usize, h: Vec<usize>, budget: u64, rows: Vec<SghReport>) -> Self {
        SurveyReport {
            version: REPORT_VERSION,
            parameters: Parameters {
                max_order,
                h,
                budget,
            },
            rows,
        }
    }

    pub fn any_mismatch(&self) -> bool {
        self.rows.iter().any(|r| r.verdict == Verdict::Mismatch)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let report: SurveyReport =
            serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        if report.version != REPORT_VERSION {
            return Err(Error::Parse(format!(
                "unsupported report version {}",
                report.version
            )));
        }
        Ok(report)
    }

    pub fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record([
            "group",
            "h",
            "chi_formula",
            "chi_brute",
            "predicted_S",
            "brute_S",
            "witnesses",
            "verdict",
            "error",
        ])
        .expect("in-memory write");
        for r in &self.rows {
            let group: Vec<usize> = r.group.iter().map(|&x| x as usize).collect();
            let witnesses = r
                .witnesses
                .iter()
                .map(|(size, set)| format!("{size}:{}", join(set)))
                .collect::<Vec<_>>()
                .join(" ");
            w.write_record([
                join(&group),
                r.h.to_string(),
                opt(&r.chi_formula),
                opt(&r.chi_brute),
                r.predicted_s.as_deref().map(join).unwrap_or_default(),
                join(&r.brute_s),
                witnesses,
                verdict_name(r.verdict).to_string(),
                r.error.clone().unwrap_or_default(),
            ])
            .expect("in-memory write");
        }
        String::from_utf8(w.into_inner().expect("in-memory flush")).expect("csv is utf-8")
    }

    pub fn to_text(&self) -> String {
        let mut out = format!(
            "{:<14} {:>2} {:>5} {:>5}  {:<24} {:<24} {}\n",
            "group", "h", "chi", "brute", "predicted S", "brute S", "verdict"
        );
        let braces = |xs: &[usize]| {
            format!(
                "{{{}}}",
                xs.iter()
                    .map(|x| x.to_string())
                    .collect::<Vec<_>>()
                    .join(",")
            )
        };
        for r in &self.rows {
            let group = format!(
                "({})",
                r.group
                    .iter()
                    .map(|x| x.to_string())
                    .collect::<Vec<_>>()
                    .join(",")
            );
            out.push_str(&format!(
                "{:<14} {:>2} {:>5} {:>5}  {:<24} {:<24} {}\n",
                group,
                r.h,
                opt(&r.chi_formula),
                opt(&r.chi_brute),
                r.predicted_s
                    .as_deref()
                    .map(braces)
                    .unwrap_or_else(|| "-".into()),
                braces(&r.brute_s),
                verdict_name(r.verdict),
            ));
        }
        out
    }

    /// Recomputes `hA` for every witness. Returns the number checked.
    pub fn verify_witnesses(&self) -> Result<usize> {
        let mut checked = 0;
        for r in &self.rows {
            let g = r.group_type()?;
            let m = r.chi_formula.or(r.chi_brute).map(|c| c.saturating_sub(1));
            let bad = |msg: String| Error::InvalidInput(format!("{g} h={}: {msg}", r.h));
            for (&size, indices) in &r.witnesses {
                let a = Subset::from_indices(g.order(), indices.iter().copied())?;
                if m.is_some_and(|m| a.len() != m) {
                    return Err(bad(format!("witness {a} has the wrong size")));
                }
                let ha = hfold(&g, &a, r.h)?;
                if ha.is_full() || ha.len() != size || !r.brute_s.contains(&size) {
                    return Err(bad(format!("witness {a} gives |hA| = {}", ha.len())));
                }
                checked += 1;
            }
            if r.witnesses.len() != r.brute_s.len() {
                return Err(bad("one witness per size expected".into()));
            }
        }
        Ok(checked)
    }
}
