//! Published worked examples recomputed end to end.

use std::io;

use serde::Serialize;

use metric_gap_core::bounds::{Direction, GapSource};
use metric_gap_core::exact_gap::lambda_upper_witness;
use metric_gap_core::families::{complete, complete_bipartite, path};
use metric_gap_core::{Assignment, Family, GapError, Graph, Rational};

use crate::corpus::k33_plus_edge;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExampleRow {
    pub name: String,
    /// What is computed: an exact gap or a single map's quotient.
    pub quantity: String,
    pub relation: Direction,
    pub expected: Rational,
    pub computed: Rational,
    pub matches: bool,
}

impl ExampleRow {
    fn new(
        name: &str,
        quantity: &str,
        relation: Direction,
        expected: Rational,
        computed: Rational,
    ) -> Self {
        let matches = match relation {
            Direction::Equal => computed == expected,
            Direction::AtMost => computed <= expected,
            Direction::AtLeast => computed >= expected,
            Direction::StrictlyBelow => computed < expected,
            Direction::StrictlyAbove => computed > expected,
        };
        ExampleRow {
            name: name.to_string(),
            quantity: quantity.to_string(),
            relation,
            expected,
            computed,
            matches,
        }
    }
}

fn q(n: i64, d: i64) -> Rational {
    Rational::new(n, d)
}

fn family(f: Family) -> Graph {
    f.generate().expect("valid parameters")
}

/// Every worked example, in a fixed order.
pub fn worked_examples(src: &dyn GapSource) -> Result<Vec<ExampleRow>, GapError> {
    use Direction::*;
    let k2 = complete(2);
    let k4e = complete(4).remove_edge(0, 1).expect("edge");
    let k33 = complete_bipartite(3, 3);
    let mut rows = Vec::with_capacity(13);

    rows.push(ExampleRow::new(
        "P3 into K2",
        "lambda",
        Equal,
        q(4, 3),
        src.gap(&path(3), &k2)?,
    ));
    rows.push(ExampleRow::new(
        "K3 minus an edge into K2",
        "lambda",
        Equal,
        q(4, 3),
        src.gap(&family(Family::CompleteMinusEdge(3)), &k2)?,
    ));
    rows.push(ExampleRow::new(
        "K5 into K3",
        "lambda",
        Equal,
        q(5, 4),
        src.gap(&complete(5), &complete(3))?,
    ));
    rows.push(ExampleRow::new(
        "K33 into K2",
        "lambda",
        Equal,
        Rational::one(),
        src.gap(&k33, &k2)?,
    ));
    rows.push(ExampleRow::new(
        "K33 into K4",
        "lambda",
        Equal,
        Rational::one(),
        src.gap(&k33, &complete(4))?,
    ));

    let f = Assignment::new(vec![3, 3, 2, 3, 1, 0]);
    rows.push(ExampleRow::new(
        "K33 into K4-e, f=(3,3,2,3,1,0)",
        "R_f",
        Equal,
        q(14, 15),
        lambda_upper_witness(&k33, &k4e, &f)?,
    ));
    let into_k4e = src.gap(&k33, &k4e)?;
    rows.push(ExampleRow::new(
        "K33 into K4-e",
        "lambda",
        AtMost,
        q(14, 15),
        into_k4e.clone(),
    ));
    rows.push(ExampleRow::new(
        "K33 into K4-e",
        "lambda",
        StrictlyBelow,
        Rational::one(),
        into_k4e,
    ));

    let halves = |n: usize| Assignment::new((0..n).map(|v| usize::from(v >= n / 2)).collect());
    rows.push(ExampleRow::new(
        "dumbbell(6) cut map into K2",
        "R_f",
        Equal,
        q(2, 7),
        lambda_upper_witness(&family(Family::Dumbbell(6)), &k2, &halves(6))?,
    ));
    rows.push(ExampleRow::new(
        "regularized dumbbell(8) halves map into K2",
        "R_f",
        Equal,
        q(1, 3),
        lambda_upper_witness(&family(Family::RegularizedDumbbell(8)), &k2, &halves(8))?,
    ));

    rows.push(ExampleRow::new(
        "K33 plus one same-side edge into K2",
        "lambda",
        Equal,
        q(20, 21),
        src.gap(&k33_plus_edge(), &k2)?,
    ));
    rows.push(ExampleRow::new(
        "K44 plus side matchings into K2",
        "lambda",
        AtMost,
        q(4, 5),
        src.gap(&family(Family::BipartitePlusMatching(4)), &k2)?,
    ));

    let red = family(Family::RedCliqueBipartite(16, 8));
    let colour = Assignment::new((0..32).map(|v| usize::from(v % 16 >= 8)).collect());
    rows.push(ExampleRow::new(
        "red clique construction (16, 8), red/blue map into K2",
        "R_f",
        StrictlyBelow,
        Rational::one(),
        lambda_upper_witness(&red, &k2, &colour)?,
    ));
    Ok(rows)
}

pub fn write_csv<W: io::Write>(rows: &[ExampleRow], out: W) -> csv::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record([
        "name", "quantity", "relation", "expected", "computed", "matches",
    ])?;
    for r in rows {
        w.write_record([
            r.name.as_str(),
            r.quantity.as_str(),
            r.relation.as_str(),
            &r.expected.to_string(),
            &r.computed.to_string(),
            if r.matches { "true" } else { "false" },
        ])?;
    }
    w.flush()?;
    Ok(())
}
