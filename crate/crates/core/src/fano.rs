//! The Fano plane with its frozen numbering, and quaternion labelings of it.
//!
//! Points are numbered `Q, Q1, Q2, Q3, H1, H2, H3 = 0..6`. `Q` is the center,
//! `Q1, Q2, Q3` the outer triangle and `H1, H2, H3` the edge midpoints, `H_i`
//! opposite `Q_i`. Each line carries a fixed ordering of its complementary
//! quadruple; orderings are part of the basis labels in golden files.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::arith::{Field, Rational};
use crate::error::{Error, Result};

pub const POINT_NAMES: [&str; 7] = ["Q", "Q1", "Q2", "Q3", "H1", "H2", "H3"];

pub const LINES: [[usize; 3]; 7] = [[1, 5, 3], [1, 6, 2], [3, 4, 2], [1, 0, 4], [2, 0, 5], [3, 0, 6], [4, 5, 6]];

const QUADRUPLES: [[usize; 4]; 7] =
    [[0, 2, 4, 6], [0, 3, 4, 5], [0, 1, 5, 6], [2, 3, 5, 6], [1, 3, 4, 6], [1, 2, 4, 5], [1, 2, 3, 0]];

pub type Pairing = ((usize, usize), (usize, usize));

pub fn point_index(name: &str) -> Option<usize> {
    POINT_NAMES.iter().position(|n| *n == name)
}

pub fn line_name(alpha: usize) -> String {
    format!("L{alpha}")
}

/// `{Q1,H2,Q3}` style label.
pub fn line_points_label(alpha: usize) -> String {
    let names: Vec<&str> = LINES[alpha].iter().map(|&p| POINT_NAMES[p]).collect();
    format!("{{{}}}", names.join(","))
}

/// Accepts `L0`..`L6` or three point names separated by commas, dashes or spaces.
pub fn parse_line(s: &str) -> Result<usize> {
    let t = s.trim().trim_start_matches('{').trim_end_matches('}');
    if let Some(n) = t.strip_prefix('L').and_then(|r| r.parse::<usize>().ok()) {
        return if n < 7 { Ok(n) } else { Err(Error::UnknownLine(s.into())) };
    }
    let pts: Option<Vec<usize>> =
        t.split(|c: char| c == ',' || c == '-' || c.is_whitespace()).filter(|x| !x.is_empty()).map(point_index).collect();
    match pts {
        Some(p) if p.len() == 3 => line_through(&p).ok_or_else(|| Error::UnknownLine(s.into())),
        _ => Err(Error::UnknownLine(s.into())),
    }
}

fn line_through(pts: &[usize]) -> Option<usize> {
    let mut want = pts.to_vec();
    want.sort_unstable();
    want.dedup();
    (0..7).find(|&l| {
        let mut has = LINES[l].to_vec();
        has.sort_unstable();
        has == want
    })
}

pub fn quadruple(alpha: usize) -> Result<[usize; 4]> {
    QUADRUPLES.get(alpha).copied().ok_or_else(|| Error::UnknownLine(alpha.to_string()))
}

pub fn on_line(p: usize, alpha: usize) -> bool {
    LINES[alpha].contains(&p)
}

pub fn lines_through(p: usize) -> Vec<usize> {
    (0..7).filter(|&l| on_line(p, l)).collect()
}

/// The line whose quadruple is the symmetric difference of the two quadruples.
pub fn third_line(alpha: usize, beta: usize) -> Result<usize> {
    let qa = quadruple(alpha)?;
    let qb = quadruple(beta)?;
    if alpha == beta {
        return Err(Error::EqualLines);
    }
    let mut diff: Vec<usize> = qa.iter().chain(qb.iter()).copied().filter(|p| !(qa.contains(p) && qb.contains(p))).collect();
    diff.sort_unstable();
    let g = (0..7)
        .find(|&l| {
            let mut q = QUADRUPLES[l].to_vec();
            q.sort_unstable();
            q == diff
        })
        .expect("symmetric difference of two quadruples is a quadruple");
    Ok(g)
}

#[derive(Clone, Debug, Serialize, Deserialize)]
struct PointSpec {
    symbol: [String; 2],
    class: Vec<u8>,
    #[serde(default)]
    split: bool,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
struct LabelingFile {
    class_rank: usize,
    points: BTreeMap<String, PointSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pairings: Option<BTreeMap<String, [[String; 2]; 2]>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointLabel {
    pub symbol: (Rational, Rational),
    pub class: Vec<u8>,
    pub split: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FanoLabeling {
    pub class_rank: usize,
    pub points: Vec<PointLabel>,
    /// Pairings given in the input; `None` entries are derived.
    pub explicit_pairings: [Option<Pairing>; 7],
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub rule: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub line: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub point: Option<String>,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
    /// Pairings in force per line; `None` where none exists.
    #[serde(skip)]
    pub pairings: [Option<Pairing>; 7],
}

impl ValidationReport {
    pub fn accepted(&self) -> bool {
        self.violations.is_empty()
    }
}

fn schema(field: impl Into<String>, msg: impl Into<String>) -> Error {
    Error::Schema { field: field.into(), msg: msg.into() }
}

impl FanoLabeling {
    pub fn all_split() -> Self {
        let one = Rational::one();
        FanoLabeling {
            class_rank: 0,
            points: (0..7).map(|_| PointLabel { symbol: (one.clone(), one.clone()), class: vec![], split: true }).collect(),
            explicit_pairings: [None; 7],
        }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let file: LabelingFile = serde_json::from_str(text).map_err(|e| schema("labeling", e.to_string()))?;
        Self::from_file(file)
    }

    fn from_file(file: LabelingFile) -> Result<Self> {
        for name in file.points.keys() {
            if point_index(name).is_none() {
                return Err(schema(format!("points.{name}"), "unknown point name"));
            }
        }
        let mut points = Vec::with_capacity(7);
        for name in POINT_NAMES {
            let spec = file.points.get(name).ok_or_else(|| schema(format!("points.{name}"), "missing point"))?;
            let parse = |s: &str, k: usize| {
                s.parse::<Rational>().map_err(|_| schema(format!("points.{name}.symbol[{k}]"), format!("not a rational: {s:?}")))
            };
            let symbol = (parse(&spec.symbol[0], 0)?, parse(&spec.symbol[1], 1)?);
            if symbol.0.is_zero() || symbol.1.is_zero() {
                return Err(schema(format!("points.{name}.symbol"), "entries must be nonzero"));
            }
            if spec.class.iter().any(|&b| b > 1) {
                return Err(schema(format!("points.{name}.class"), "class bits must be 0 or 1"));
            }
            if spec.split && symbol != (Rational::one(), Rational::one()) {
                return Err(schema(format!("points.{name}.split"), "split points must carry the symbol (1,1)"));
            }
            points.push(PointLabel { symbol, class: spec.class.clone(), split: spec.split });
        }
        let mut explicit_pairings = [None; 7];
        if let Some(map) = file.pairings {
            for (key, [[a, b], [c, d]]) in map {
                let line = parse_line(&key).map_err(|_| schema(format!("pairings.{key}"), "unknown line"))?;
                let pt = |s: &String| point_index(s).ok_or_else(|| schema(format!("pairings.{key}"), format!("unknown point {s:?}")));
                explicit_pairings[line] = Some(((pt(&a)?, pt(&b)?), (pt(&c)?, pt(&d)?)));
            }
        }
        Ok(FanoLabeling { class_rank: file.class_rank, points, explicit_pairings })
    }

    pub fn to_json(&self) -> String {
        let points = (0..7)
            .map(|p| {
                let l = &self.points[p];
                (
                    POINT_NAMES[p].to_string(),
                    PointSpec { symbol: [l.symbol.0.to_string(), l.symbol.1.to_string()], class: l.class.clone(), split: l.split },
                )
            })
            .collect();
        let explicit: BTreeMap<String, [[String; 2]; 2]> = (0..7)
            .filter_map(|l| {
                self.explicit_pairings[l].map(|((a, b), (c, d))| {
                    let n = |p: usize| POINT_NAMES[p].to_string();
                    (line_name(l), [[n(a), n(b)], [n(c), n(d)]])
                })
            })
            .collect();
        let file = LabelingFile { class_rank: self.class_rank, points, pairings: (!explicit.is_empty()).then_some(explicit) };
        serde_json::to_string_pretty(&file).expect("serializable")
    }

    fn pair_ok(&self, p: usize, q: usize) -> bool {
        let (a, b) = (&self.points[p], &self.points[q]);
        a.class == b.class && a.symbol == b.symbol
    }

    /// Default pairing: the first of the three splittings of the canonical
    /// quadruple `(q0,q1,q2,q3)`, tried as `01|23`, `02|13`, `03|12`, whose
    /// pairs join equal classes with identical symbols.
    pub fn derive_pairing(&self, alpha: usize) -> Option<Pairing> {
        let q = QUADRUPLES[alpha];
        [((q[0], q[1]), (q[2], q[3])), ((q[0], q[2]), (q[1], q[3])), ((q[0], q[3]), (q[1], q[2]))]
            .into_iter()
            .find(|&((a, b), (c, d))| self.pair_ok(a, b) && self.pair_ok(c, d))
    }

    pub fn validate(&self) -> ValidationReport {
        let mut v = Vec::new();
        let point = |p: usize| Some(POINT_NAMES[p].to_string());
        for (p, l) in self.points.iter().enumerate() {
            if l.class.len() != self.class_rank {
                v.push(Violation {
                    rule: "class_rank".into(),
                    line: None,
                    point: point(p),
                    detail: format!("class vector has length {}, class_rank is {}", l.class.len(), self.class_rank),
                });
            }
        }
        if !v.is_empty() {
            return ValidationReport { violations: v, pairings: [None; 7] };
        }
        for (alpha, pts) in LINES.iter().enumerate() {
            let sum: Vec<u8> = (0..self.class_rank).map(|k| pts.iter().map(|&p| self.points[p].class[k]).sum::<u8>() % 2).collect();
            if sum.iter().any(|&b| b != 0) {
                v.push(Violation {
                    rule: "line_sum".into(),
                    line: Some(format!("{} {}", line_name(alpha), line_points_label(alpha))),
                    point: None,
                    detail: format!("class sum along the line is {sum:?}"),
                });
            }
        }
        for p in 0..7 {
            for q in p + 1..7 {
                let (a, b) = (&self.points[p], &self.points[q]);
                if a.class == b.class && a.symbol != b.symbol && !(a.split && b.split) {
                    v.push(Violation {
                        rule: "class_symbol".into(),
                        line: None,
                        point: Some(format!("{},{}", POINT_NAMES[p], POINT_NAMES[q])),
                        detail: "equal classes but different symbols".into(),
                    });
                }
            }
        }
        let mut pairings = [None; 7];
        for alpha in 0..7 {
            let lname = Some(format!("{} {}", line_name(alpha), line_points_label(alpha)));
            match self.explicit_pairings[alpha] {
                Some(pr) => {
                    let ((a, b), (c, d)) = pr;
                    let mut got = vec![a, b, c, d];
                    got.sort_unstable();
                    let mut want = QUADRUPLES[alpha].to_vec();
                    want.sort_unstable();
                    if got != want {
                        v.push(Violation {
                            rule: "pairing_partition".into(),
                            line: lname,
                            point: None,
                            detail: "pairing is not a partition of the complementary quadruple".into(),
                        });
                    } else if !(self.pair_ok(a, b) && self.pair_ok(c, d)) {
                        v.push(Violation {
                            rule: "pairing_class".into(),
                            line: lname,
                            point: None,
                            detail: "a pair joins points of different class or symbol".into(),
                        });
                    } else {
                        pairings[alpha] = Some(pr);
                    }
                }
                None => match self.derive_pairing(alpha) {
                    Some(pr) => pairings[alpha] = Some(pr),
                    None => v.push(Violation {
                        rule: "pairing_missing".into(),
                        line: lname,
                        point: None,
                        detail: "no splitting of the quadruple into equal-symbol pairs".into(),
                    }),
                },
            }
        }
        ValidationReport { violations: v, pairings }
    }

    /// Pairings of an accepted labeling.
    pub fn pairings(&self) -> Result<[Pairing; 7]> {
        let rep = self.validate();
        if !rep.accepted() {
            return Err(Error::LabelingRejected(
                rep.violations.iter().map(|x| format!("{}: {}", x.rule, x.line.clone().or(x.point.clone()).unwrap_or_default())).collect::<Vec<_>>().join("; "),
            ));
        }
        Ok(rep.pairings.map(|p| p.expect("accepted labeling has all pairings")))
    }

    pub fn split_points(&self) -> Vec<usize> {
        (0..7).filter(|&p| self.points[p].split).collect()
    }
}

pub fn validate_labeling(l: &FanoLabeling) -> ValidationReport {
    l.validate()
}
