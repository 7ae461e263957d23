//! Built-in counterexamples 1–6.
//!
//! Expected values are fixed literals (decimals such as `.45` stored as
//! `9/20`), each with a note on where it comes from: `stated:` for values
//! given with the case, `derived:` for hand computations the case implies.
//! Nothing here is computed by the code under test.

use crate::error::{Error, Result};
use crate::measures::{IntervalSet, StepDensity};
use crate::procedures::{
    cut_and_choose, ep_for_ordering, equitability, moving_knife, surplus_divide, Allocation,
    Player, Scenario, SurplusVariant, TieRule,
};
use crate::rational::{format_rational, parse_rational, Rational};
use crate::solve::{pareto_analyze, utilitarian_bound};
use crate::verify::{envy_free_check, pareto_optimal_check, proportional_check, TruthProfile};

fn q(s: &str) -> Rational {
    parse_rational(s).expect("registry literal")
}

fn step(pieces: &[(&str, &str, &str)]) -> StepDensity {
    StepDensity::from_triples(pieces.iter().map(|(a, b, d)| (q(a), q(b), q(d))))
        .expect("registry density")
}

fn scenario(players: Vec<(&str, StepDensity)>) -> Scenario {
    Scenario::new(
        players
            .into_iter()
            .map(|(name, declared)| Player {
                name: name.into(),
                declared,
            })
            .collect(),
    )
    .expect("registry scenario")
}

fn set(pairs: &[(&str, &str)]) -> IntervalSet {
    IntervalSet::from_pairs(pairs.iter().map(|(a, b)| (q(a), q(b)))).expect("registry set")
}

/// Scenarios of the six counterexamples.
pub mod scenarios {
    use super::*;

    /// Unit square cut vertically: both x-marginals are uniform.
    pub fn ce1_vertical() -> Scenario {
        scenario(vec![
            ("1", StepDensity::uniform()),
            ("2", StepDensity::uniform()),
        ])
    }

    /// Unit square cut horizontally: y-marginals of "top half" and "bottom half" players.
    pub fn ce1_horizontal() -> Scenario {
        scenario(vec![
            ("1", step(&[("0", "1/2", "0"), ("1/2", "1", "2")])),
            ("2", step(&[("0", "1/2", "2"), ("1/2", "1", "0")])),
        ])
    }

    pub fn ce2() -> Scenario {
        scenario(vec![
            ("1", StepDensity::uniform()),
            (
                "2",
                step(&[("0", "1/4", "2"), ("1/4", "3/4", "0"), ("3/4", "1", "2")]),
            ),
        ])
    }

    pub fn ce3() -> Scenario {
        scenario(vec![
            ("1", StepDensity::uniform()),
            ("2", step(&[("0", "1/3", "3"), ("1/3", "1", "0")])),
            ("3", step(&[("0", "2/3", "0"), ("2/3", "1", "3")])),
        ])
    }

    pub fn ce4() -> Scenario {
        scenario(vec![
            ("1", StepDensity::uniform()),
            ("2", StepDensity::uniform()),
            ("3", StepDensity::uniform()),
        ])
    }

    pub fn ce5() -> Scenario {
        let (hi, lo) = ("12/5", "3/10");
        scenario(vec![
            (
                "A",
                step(&[
                    ("0", "1/6", hi),
                    ("1/6", "1/2", lo),
                    ("1/2", "2/3", hi),
                    ("2/3", "1", lo),
                ]),
            ),
            (
                "B",
                step(&[
                    ("0", "1/6", lo),
                    ("1/6", "1/3", hi),
                    ("1/3", "2/3", lo),
                    ("2/3", "5/6", hi),
                    ("5/6", "1", lo),
                ]),
            ),
            (
                "C",
                step(&[
                    ("0", "1/3", lo),
                    ("1/3", "1/2", hi),
                    ("1/2", "5/6", lo),
                    ("5/6", "1", hi),
                ]),
            ),
        ])
    }

    /// CE5's dominating allocation: each player gets the two stretches they value at 2.4.
    pub fn ce5_block() -> Allocation {
        Allocation::new(
            vec!["A".into(), "B".into(), "C".into()],
            vec![
                set(&[("0", "1/6"), ("1/2", "2/3")]),
                set(&[("1/6", "1/3"), ("2/3", "5/6")]),
                set(&[("1/3", "1/2"), ("5/6", "1")]),
            ],
        )
        .expect("block allocation")
    }

    pub fn ce6() -> Scenario {
        let (hi, lo) = ("8/5", "2/5");
        scenario(vec![
            (
                "A",
                step(&[
                    ("0", "1/4", hi),
                    ("1/4", "1/2", lo),
                    ("1/2", "3/4", hi),
                    ("3/4", "1", lo),
                ]),
            ),
            (
                "B",
                step(&[
                    ("0", "1/4", lo),
                    ("1/4", "1/2", hi),
                    ("1/2", "3/4", lo),
                    ("3/4", "1", hi),
                ]),
            ),
        ])
    }

    pub fn ce6_block() -> Allocation {
        Allocation::new(
            vec!["A".into(), "B".into()],
            vec![
                set(&[("0", "1/4"), ("1/2", "3/4")]),
                set(&[("1/4", "1/2"), ("3/4", "1")]),
            ],
        )
        .expect("block allocation")
    }

    /// CE2's alternative: `[0,1/4]` to player 2, the rest to player 1.
    pub fn ce2_witness() -> Allocation {
        Allocation::new(
            vec!["1".into(), "2".into()],
            vec![set(&[("1/4", "1")]), set(&[("0", "1/4")])],
        )
        .expect("witness allocation")
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ExpectedValue {
    Rationals(Vec<Rational>),
    Verdict(bool),
    Text(String),
}

impl ExpectedValue {
    fn render(&self) -> String {
        match self {
            ExpectedValue::Rationals(v) => render_rationals(v),
            ExpectedValue::Verdict(b) => b.to_string(),
            ExpectedValue::Text(t) => t.clone(),
        }
    }
}

fn render_rationals(v: &[Rational]) -> String {
    let parts: Vec<String> = v.iter().map(format_rational).collect();
    if parts.len() == 1 {
        parts[0].clone()
    } else {
        format!("({})", parts.join(", "))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Expectation {
    pub field: &'static str,
    pub value: ExpectedValue,
    pub source: &'static str,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CounterexampleCase {
    pub id: u8,
    pub title: &'static str,
    pub expectations: Vec<Expectation>,
}

fn rats(field: &'static str, values: &[&str], source: &'static str) -> Expectation {
    Expectation {
        field,
        value: ExpectedValue::Rationals(values.iter().map(|v| q(v)).collect()),
        source,
    }
}

fn verdict(field: &'static str, value: bool, source: &'static str) -> Expectation {
    Expectation {
        field,
        value: ExpectedValue::Verdict(value),
        source,
    }
}

fn text(field: &'static str, value: &str, source: &'static str) -> Expectation {
    Expectation {
        field,
        value: ExpectedValue::Text(value.into()),
        source,
    }
}

/// Registered expectations for counterexample `id` (1–6).
pub fn case(id: u8) -> Result<CounterexampleCase> {
    let (title, expectations) = match id {
        1 => (
            "cut-and-choose is not Pareto optimal on the unit square",
            vec![
                rats("vertical.cut", &["1/2"], "stated: the unique risk-averse vertical cut bisects the cake"),
                rats("vertical.values", &["1/2", "1/2"], "stated: each player values their piece at exactly 1/2"),
                rats("horizontal.cut", &["3/4"], "stated: the unique risk-averse horizontal cut is y = 3/4"),
                rats("horizontal.values", &["1/2", "1"], "stated: the cutter gets 1/2, the chooser the whole of what they value"),
                rats("block.values", &["1", "1"], "stated: top half to player 1, bottom half to player 2 gives both everything they value"),
                verdict("block.dominates_vertical", true, "stated: no worse for player 2 and strictly better for player 1"),
                verdict("block.dominates_horizontal", true, "stated: no worse for player 2 and strictly better for player 1"),
                verdict("horizontal.pareto_optimal", false, "stated: neither cut direction is Pareto optimal"),
            ],
        ),
        2 => (
            "an envy-free 1-cut allocation need not be efficient",
            vec![
                rats("cut", &["1/2"], "stated: the cutter's unique cut is x = 1/2"),
                rats("values", &["1/2", "1/2"], "stated: each player values their piece at exactly 1/2"),
                verdict("envy_free", true, "stated: two-player cut-and-choose is envy-free"),
                rats("witness.values", &["3/4", "1/2"], "stated: [0,1/4] to player 2 gives values 3/4 and 1/2"),
                verdict("witness.dominates", true, "stated: the alternative dominates the cut-and-choose outcome"),
                verdict("pareto_optimal", false, "stated: the cut-and-choose outcome is not Pareto optimal"),
                rats("median_interval.2", &["1/4", "3/4"], "derived: player 2's cdf is 1/2 on [1/4, 3/4]"),
            ],
        ),
        3 => (
            "equal-value cutpoints may not exist",
            vec![
                text("strict.error", "EP_UNDEFINED", "stated: equal-value cutpoints can fail to exist, so strict EP is undefined"),
                verdict("strict.names_(1,3,2)", true, "stated: ordering 1-3-2 has no equal-value cutpoints"),
                verdict("ordering_(1,3,2).feasible", false, "stated: ordering 1-3-2 has no equal-value cutpoints"),
                text("lenient.ordering", "(2,1,3)", "derived: 3x1 = x2 - x1 = 3(1 - x2) has the largest common value"),
                rats("lenient.cuts", &["1/5", "4/5"], "derived: 3x1 = x2 - x1 = 3(1 - x2)"),
                rats("lenient.common_value", &["3/5"], "derived: 3x1 = x2 - x1 = 3(1 - x2)"),
            ],
        ),
        4 => (
            "moving marks rightward can leave a player below 1/n",
            vec![
                rats("cuts", &["1/3", "2/3"], "stated: the marks are exactly 1/3 and 2/3"),
                rats("values", &["1/3", "1/3", "1/3"], "derived: three uniform players split evenly"),
                verdict("shift_1/100.some_below_1/3", true, "stated: moving the marks right leaves some player below 1/3"),
                verdict("shift_1/10.some_below_1/3", true, "stated: moving the marks right leaves some player below 1/3"),
                rats("shift_1/100.last_value", &["97/300"], "derived: 1 - (2/3 + 1/100)"),
                rats("shift_1/10.last_value", &["7/30"], "derived: 1 - (2/3 + 1/10)"),
            ],
        ),
        5 => (
            "the Equitability Procedure is not Pareto optimal",
            vec![
                text("ordering", "(A,C,B)", "stated: (0,1/3) to A, (1/3,2/3) to C, the rest to B"),
                rats("cuts", &["1/3", "2/3"], "stated: (0,1/3) to A, (1/3,2/3) to C, the rest to B"),
                rats("common_value", &["9/20"], "stated: each piece is worth exactly .45 to its owner"),
                rats("values", &["9/20", "9/20", "9/20"], "stated: each piece is worth exactly .45 to its owner"),
                verdict("proportional", true, "derived: .45 >= 1/3"),
                rats("block.values", &["4/5", "4/5", "4/5"], "stated: the block allocation is worth .8 to each player"),
                verdict("block.dominates", true, "stated: the block allocation is strictly better for everyone"),
                verdict("pareto_optimal", false, "stated: the EP outcome is not Pareto optimal"),
                rats("witness.values", &["4/5", "4/5", "4/5"], "stated: a dominating allocation worth .8 to each player exists"),
            ],
        ),
        6 => (
            "the Surplus Procedure is not Pareto optimal",
            vec![
                rats("sp_e.cut", &["1/2"], "stated: SP cuts at 1/2"),
                rats("sp_e.values", &["1/2", "1/2"], "stated: each piece is worth exactly .5 to its owner"),
                rats("sp_p.cut", &["1/2"], "stated: SP cuts at 1/2"),
                rats("sp_p.values", &["1/2", "1/2"], "stated: each piece is worth exactly .5 to its owner"),
                rats("block.values", &["4/5", "4/5"], "stated: the block allocation is worth .8 to each player"),
                verdict("block.dominates", true, "stated: the block allocation is strictly better for everyone"),
                verdict("sp.pareto_optimal", false, "stated: the SP outcome is not Pareto optimal"),
                rats("witness.values", &["4/5", "4/5"], "stated: a dominating allocation worth .8 to each player exists"),
                verdict("block.pareto_optimal", true, "derived: block total 8/5 equals the utilitarian bound"),
                rats("block.lp_optimum", &["0"], "derived: block total 8/5 equals the utilitarian bound"),
                rats("utilitarian_bound", &["8/5"], "derived: four quarters at density 1.6"),
            ],
        ),
        _ => {
            return Err(Error::Domain(format!(
                "counterexample id {id} is not in 1..=6"
            )))
        }
    };
    Ok(CounterexampleCase {
        id,
        title,
        expectations,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CaseCheck {
    pub field: String,
    pub expected: String,
    pub actual: String,
    pub ok: bool,
    pub source: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CaseReport {
    pub id: u8,
    pub title: String,
    pub checks: Vec<CaseCheck>,
}

impl CaseReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.ok)
    }

    /// `Err(Mismatch)` listing every divergent field.
    pub fn ensure_passed(&self) -> Result<()> {
        let fields: Vec<String> = self
            .checks
            .iter()
            .filter(|c| !c.ok)
            .map(|c| c.field.clone())
            .collect();
        if fields.is_empty() {
            Ok(())
        } else {
            Err(Error::Mismatch {
                case: self.id,
                fields,
            })
        }
    }
}

type Actuals = Vec<(&'static str, ExpectedValue)>;

fn r_vec(v: Vec<Rational>) -> ExpectedValue {
    ExpectedValue::Rationals(v)
}

fn one(v: Rational) -> ExpectedValue {
    ExpectedValue::Rationals(vec![v])
}

// `a` weakly better everywhere and strictly better somewhere than `b`.
fn dominates(a: &[Rational], b: &[Rational]) -> bool {
    a.iter().zip(b).all(|(x, y)| x >= y) && a.iter().zip(b).any(|(x, y)| x > y)
}

fn truthful(s: &Scenario) -> TruthProfile {
    TruthProfile::declared(s)
}

fn actuals_ce1() -> Result<Actuals> {
    let vertical = scenarios::ce1_vertical();
    let horizontal = scenarios::ce1_horizontal();
    let v = cut_and_choose(&vertical, 0, true, TieRule::LowestIndex)?;
    let h = cut_and_choose(&horizontal, 0, true, TieRule::LowestIndex)?;
    let v_values = v.declared_values(&vertical);
    let h_values = h.declared_values(&horizontal);
    // top half → 1, bottom half → 2, valued through the y-marginals
    let top = set(&[("1/2", "1")]);
    let block = vec![
        horizontal.density(0).mass(&top),
        horizontal.density(1).mass(&top.complement()),
    ];
    let h_pareto = pareto_optimal_check(&horizontal, &h.allocation, &truthful(&horizontal))?;
    Ok(vec![
        ("vertical.cut", one(v.cuts[0].clone())),
        ("vertical.values", r_vec(v_values.clone())),
        ("horizontal.cut", one(h.cuts[0].clone())),
        ("horizontal.values", r_vec(h_values.clone())),
        ("block.values", r_vec(block.clone())),
        (
            "block.dominates_vertical",
            ExpectedValue::Verdict(dominates(&block, &v_values) && block[0] > v_values[0]),
        ),
        (
            "block.dominates_horizontal",
            ExpectedValue::Verdict(dominates(&block, &h_values) && block[0] > h_values[0]),
        ),
        (
            "horizontal.pareto_optimal",
            ExpectedValue::Verdict(h_pareto.holds),
        ),
    ])
}

fn actuals_ce2() -> Result<Actuals> {
    let s = scenarios::ce2();
    let o = cut_and_choose(&s, 0, true, TieRule::LowestIndex)?;
    let values = o.declared_values(&s);
    let witness = scenarios::ce2_witness().values(&s.densities());
    let envy = envy_free_check(&s, &o.allocation, &truthful(&s))?;
    let pareto = pareto_optimal_check(&s, &o.allocation, &truthful(&s))?;
    let m = s.density(1).median_interval();
    Ok(vec![
        ("cut", one(o.cuts[0].clone())),
        ("values", r_vec(values.clone())),
        ("envy_free", ExpectedValue::Verdict(envy.holds)),
        ("witness.values", r_vec(witness.clone())),
        (
            "witness.dominates",
            ExpectedValue::Verdict(dominates(&witness, &values)),
        ),
        ("pareto_optimal", ExpectedValue::Verdict(pareto.holds)),
        (
            "median_interval.2",
            r_vec(vec![m.lo().clone(), m.hi().clone()]),
        ),
    ])
}

fn actuals_ce3() -> Result<Actuals> {
    let s = scenarios::ce3();
    let mut out: Actuals = Vec::new();
    match equitability(&s, true, TieRule::LowestIndex) {
        Err(Error::EpUndefined { infeasible }) => {
            out.push(("strict.error", ExpectedValue::Text("EP_UNDEFINED".into())));
            let named = infeasible.iter().any(|o| o == &["1", "3", "2"]);
            out.push(("strict.names_(1,3,2)", ExpectedValue::Verdict(named)));
        }
        Err(e) => out.push(("strict.error", ExpectedValue::Text(e.code().into()))),
        Ok(_) => out.push(("strict.error", ExpectedValue::Text("none".into()))),
    }
    let sol = ep_for_ordering(&s, &[0, 2, 1])?;
    out.push((
        "ordering_(1,3,2).feasible",
        ExpectedValue::Verdict(sol.is_some()),
    ));
    let lenient = equitability(&s, false, TieRule::LowestIndex)?;
    out.push((
        "lenient.ordering",
        ExpectedValue::Text(format!(
            "({})",
            s.ordering_names(&lenient.ordering).join(",")
        )),
    ));
    out.push(("lenient.cuts", r_vec(lenient.cuts.clone())));
    out.push((
        "lenient.common_value",
        r_vec(lenient.common_value.into_iter().collect()),
    ));
    Ok(out)
}

fn actuals_ce4() -> Result<Actuals> {
    let s = scenarios::ce4();
    let o = moving_knife(&s, TieRule::LowestIndex)?;
    let mut out: Actuals = vec![
        ("cuts", r_vec(o.cuts.clone())),
        ("values", r_vec(o.declared_values(&s))),
    ];
    let third = Rational::new(1.into(), 3.into());
    for (shift, below_field, last_field) in [
        (
            "1/100",
            "shift_1/100.some_below_1/3",
            "shift_1/100.last_value",
        ),
        ("1/10", "shift_1/10.some_below_1/3", "shift_1/10.last_value"),
    ] {
        let delta = q(shift);
        let moved: Vec<Rational> = o.cuts.iter().map(|c| c + &delta).collect();
        let shifted = Allocation::contiguous(s.names(), &moved, &o.ordering)?;
        let values = shifted.values(&s.densities());
        out.push((
            below_field,
            ExpectedValue::Verdict(values.iter().any(|v| v < &third)),
        ));
        let last = *o.ordering.last().expect("three players");
        out.push((last_field, one(values[last].clone())));
    }
    Ok(out)
}

fn actuals_ce5() -> Result<Actuals> {
    let s = scenarios::ce5();
    let o = equitability(&s, false, TieRule::LowestIndex)?;
    let values = o.declared_values(&s);
    let block = scenarios::ce5_block().values(&s.densities());
    let prop = proportional_check(&s, &o.allocation, &truthful(&s))?;
    let pareto = pareto_optimal_check(&s, &o.allocation, &truthful(&s))?;
    Ok(vec![
        (
            "ordering",
            ExpectedValue::Text(format!("({})", s.ordering_names(&o.ordering).join(","))),
        ),
        ("cuts", r_vec(o.cuts.clone())),
        (
            "common_value",
            r_vec(o.common_value.clone().into_iter().collect()),
        ),
        ("values", r_vec(values.clone())),
        ("proportional", ExpectedValue::Verdict(prop.holds)),
        ("block.values", r_vec(block.clone())),
        (
            "block.dominates",
            ExpectedValue::Verdict(dominates(&block, &values)),
        ),
        ("pareto_optimal", ExpectedValue::Verdict(pareto.holds)),
        (
            "witness.values",
            r_vec(pareto.witness.map(|w| w.value_vector).unwrap_or_default()),
        ),
    ])
}

fn actuals_ce6() -> Result<Actuals> {
    let s = scenarios::ce6();
    let e = surplus_divide(&s, SurplusVariant::Equitable, true, TieRule::LowestIndex)?;
    let p = surplus_divide(&s, SurplusVariant::Proportional, true, TieRule::LowestIndex)?;
    let e_values = e.declared_values(&s);
    let block_alloc = scenarios::ce6_block();
    let block = block_alloc.values(&s.densities());
    let sp_pareto = pareto_optimal_check(&s, &e.allocation, &truthful(&s))?;
    let block_analysis = pareto_analyze(&s.densities(), &block_alloc, std::iter::empty())?;
    Ok(vec![
        ("sp_e.cut", one(e.cuts[0].clone())),
        ("sp_e.values", r_vec(e_values.clone())),
        ("sp_p.cut", one(p.cuts[0].clone())),
        ("sp_p.values", r_vec(p.declared_values(&s))),
        ("block.values", r_vec(block.clone())),
        (
            "block.dominates",
            ExpectedValue::Verdict(dominates(&block, &e_values)),
        ),
        ("sp.pareto_optimal", ExpectedValue::Verdict(sp_pareto.holds)),
        (
            "witness.values",
            r_vec(
                sp_pareto
                    .witness
                    .map(|w| w.value_vector)
                    .unwrap_or_default(),
            ),
        ),
        (
            "block.pareto_optimal",
            ExpectedValue::Verdict(block_analysis.witness.is_none()),
        ),
        ("block.lp_optimum", one(block_analysis.optimum)),
        ("utilitarian_bound", one(utilitarian_bound(&s.densities()))),
    ])
}

/// Runs counterexample `id` and compares every computed value to the
/// registry with exact equality.
pub fn run_counterexample(id: u8) -> Result<CaseReport> {
    let registered = case(id)?;
    let actuals = match id {
        1 => actuals_ce1()?,
        2 => actuals_ce2()?,
        3 => actuals_ce3()?,
        4 => actuals_ce4()?,
        5 => actuals_ce5()?,
        6 => actuals_ce6()?,
        _ => unreachable!("case() validated the id"),
    };
    let checks = registered
        .expectations
        .iter()
        .map(|exp| {
            let actual = actuals
                .iter()
                .find(|(f, _)| *f == exp.field)
                .map(|(_, v)| v);
            CaseCheck {
                field: exp.field.into(),
                expected: exp.value.render(),
                actual: actual.map_or_else(|| "missing".into(), ExpectedValue::render),
                ok: actual == Some(&exp.value),
                source: exp.source.into(),
            }
        })
        .collect();
    Ok(CaseReport {
        id,
        title: registered.title.into(),
        checks,
    })
}
