//! The four-dimensional multiplicity table and parameter sweeps.

use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::{ParamScalar, Scalar};
use crate::error::Result;
use crate::exterior::{Metric, Variant};
use crate::sbo::{build_abcd, build_sbo, hodge_compose, Abcd, Family, FormOperator, SboSpec};

use super::classify::{classify, necessary_condition, operator_rank, ClassifySpec};

/// A nonempty box of the `n = 4` table: which `(u, ℓ)` it holds at and
/// which pair of operators generates it.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum TableBox {
    /// Holds exactly at `u = u0`, `ℓ = 1`.
    Fixed { u0: i64, ops: (Gen, Gen) },
    /// Holds for all `u` and `ℓ ∈ N`.
    Family { ops: (Gen, Gen) },
}

/// Generator recipes; `Star(x)` means `*_{R^{p−1,q}} ∘ x`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Gen {
    Op(Atom),
    Star(Atom),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Atom {
    Abcd(Abcd),
    Lower,
    Same,
}

fn table_box(i: usize, j: usize) -> Option<TableBox> {
    use Atom::*;
    use Gen::*;
    let (a, b, c, d) = (
        Abcd(self::Abcd::A),
        Abcd(self::Abcd::B),
        Abcd(self::Abcd::C),
        Abcd(self::Abcd::D),
    );
    Some(match (i, j) {
        (1, 1) => TableBox::Fixed {
            u0: 0,
            ops: (Star(a), Op(c)),
        },
        (1, 2) => TableBox::Fixed {
            u0: 0,
            ops: (Op(a), Star(c)),
        },
        (2, 0) => TableBox::Fixed {
            u0: 0,
            ops: (Op(d), Star(a)),
        },
        (2, 1) => TableBox::Family {
            ops: (Op(Lower), Star(Same)),
        },
        (2, 2) => TableBox::Family {
            ops: (Op(Same), Star(Lower)),
        },
        (2, 3) => TableBox::Fixed {
            u0: 0,
            ops: (Op(a), Star(d)),
        },
        (3, 1) => TableBox::Fixed {
            u0: -2,
            ops: (Op(d), Star(b)),
        },
        (3, 2) => TableBox::Fixed {
            u0: -2,
            ops: (Op(b), Star(d)),
        },
        _ => return None,
    })
}

fn atom_name(a: Atom) -> String {
    match a {
        Atom::Abcd(x) => x.to_string(),
        Atom::Lower => "D^(i->i-1)".into(),
        Atom::Same => "D^(i->i)".into(),
    }
}

fn gen_name(g: Gen) -> String {
    match g {
        Gen::Op(a) => atom_name(a),
        Gen::Star(a) => format!("*∘{}", atom_name(a)),
    }
}

fn build_atom(a: Atom, g: &Metric, i: usize, u: &Scalar, ell: usize) -> Result<FormOperator> {
    let spec = |family| {
        SboSpec::new(
            g.variant(),
            g.p(),
            g.q(),
            i,
            family,
            ParamScalar::constant(u.clone()),
            ell,
        )
    };
    match a {
        Atom::Abcd(x) => build_abcd(x, g, i),
        Atom::Lower => build_sbo(&spec(Family::Lower)),
        Atom::Same => build_sbo(&spec(Family::Same)),
    }
}

fn build_gen(x: Gen, g: &Metric, i: usize, u: &Scalar, ell: usize) -> Result<FormOperator> {
    match x {
        Gen::Op(a) => build_atom(a, g, i, u, ell),
        Gen::Star(a) => hodge_compose(&g.hyperplane(), &build_atom(a, g, i, u, ell)?),
    }
}

/// True if `(i, j, u, v)` lies in a nonempty box of the `n = 4` table.
pub fn on_table(i: usize, j: usize, u: &Scalar, v: &Scalar) -> bool {
    let ell = &(v + &Scalar::from_int(j as i64)) - &(u + &Scalar::from_int(i as i64));
    let natural = ell.is_integer() && ell.to_i64().is_some_and(|l| l >= 0);
    match table_box(i, j) {
        Some(TableBox::Fixed { u0, .. }) => {
            *u == Scalar::from_int(u0) && ell == Scalar::from_int(1)
        }
        Some(TableBox::Family { .. }) => natural,
        None => false,
    }
}

/// The generator pair listed in the table at `(i, j, u, ℓ)`, if any.
pub fn table_generators(
    g: &Metric,
    i: usize,
    j: usize,
    u: &Scalar,
    ell: usize,
) -> Result<Option<Vec<(String, FormOperator)>>> {
    let v = &(u + &Scalar::from_int(ell as i64 + i as i64)) - &Scalar::from_int(j as i64);
    if g.n() != 4 || !on_table(i, j, u, &v) {
        return Ok(None);
    }
    let ops = match table_box(i, j) {
        Some(TableBox::Fixed { ops, .. }) | Some(TableBox::Family { ops }) => ops,
        None => return Ok(None),
    };
    let mut out = Vec::new();
    for x in [ops.0, ops.1] {
        out.push((gen_name(x), build_gen(x, g, i, u, ell)?));
    }
    Ok(Some(out))
}

/// One sampled parameter point of a cell.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Sample {
    pub u: Scalar,
    pub v: Scalar,
}

fn frac(a: i64, b: i64) -> Scalar {
    Scalar::frac(a, b)
}

/// Parameter points for cell `(i, j)` with `ℓ ≤ max_ell`: the table's own
/// points, the special weights `u ∈ {0, −2}` at small `ℓ`, and three
/// generic points with denominators 3, 7 and 5 (one of them with
/// non-integral `ℓ`).
pub fn cell_samples(i: usize, j: usize, max_ell: i64) -> Vec<Sample> {
    let shift = i as i64 - j as i64;
    let mk = |u: Scalar, ell: Scalar| Sample {
        v: &(&u + &ell) + &Scalar::from_int(shift),
        u,
    };
    let mut out = Vec::new();
    for u0 in [0, -2] {
        for ell in 0..=max_ell.min(2) {
            out.push(mk(Scalar::from_int(u0), Scalar::from_int(ell)));
        }
    }
    if matches!(table_box(i, j), Some(TableBox::Family { .. })) {
        for ell in 0..=max_ell.min(3) {
            out.push(mk(frac(1, 3), Scalar::from_int(ell)));
        }
    }
    out.push(mk(frac(1, 3), Scalar::from_int(1)));
    out.push(mk(frac(-5, 7), Scalar::from_int(max_ell.clamp(0, 4))));
    out.push(mk(frac(2, 5), frac(5, 2)));
    let mut unique: Vec<Sample> = Vec::new();
    for s in out {
        if !unique.contains(&s) {
            unique.push(s);
        }
    }
    unique
}

/// One classified sample.
#[derive(Clone, Debug, Serialize)]
pub struct CellRow {
    pub i: usize,
    pub j: usize,
    pub u: String,
    pub v: String,
    pub ell: String,
    pub dimension: usize,
    pub necessary: bool,
    pub on_table: bool,
    /// Names of the table generators checked at this point.
    pub generators: Vec<String>,
    /// Whether every listed generator lies in the kernel.
    pub generators_in_kernel: Option<bool>,
    /// Whether the listed generators are linearly independent.
    pub generators_independent: Option<bool>,
    /// A listed generator vanishes identically here (a renormalization
    /// point of the family), so independence is not expected.
    pub renormalization_point: bool,
    pub pass: bool,
}

/// Result of a sweep over cells and samples for one signature.
#[derive(Clone, Debug, Serialize)]
pub struct SweepReport {
    pub p: usize,
    pub q: usize,
    pub variant: Variant,
    pub order_bound: u32,
    pub rows: Vec<CellRow>,
}

impl SweepReport {
    pub fn pass(&self) -> bool {
        self.rows.iter().all(|r| r.pass)
    }

    /// `(i, j, u, v, dimension)` for comparing signatures.
    pub fn dimensions(&self) -> Vec<(usize, usize, String, String, usize)> {
        self.rows
            .iter()
            .map(|r| (r.i, r.j, r.u.clone(), r.v.clone(), r.dimension))
            .collect()
    }

    pub fn to_csv(&self) -> String {
        let mut s = String::from("i,j,u,v,ell,dimension,necessary,on_table,generators,in_kernel,independent,renormalization_point,pass\n");
        let opt = |b: Option<bool>| b.map(|x| x.to_string()).unwrap_or_default();
        for r in &self.rows {
            s.push_str(&format!(
                "{},{},{},{},{},{},{},{},{},{},{},{},{}\n",
                r.i,
                r.j,
                r.u,
                r.v,
                r.ell,
                r.dimension,
                r.necessary,
                r.on_table,
                r.generators.join(" ; "),
                opt(r.generators_in_kernel),
                opt(r.generators_independent),
                r.renormalization_point,
                r.pass
            ));
        }
        s
    }
}

fn classify_row(
    g: &Metric,
    i: usize,
    j: usize,
    s: &Sample,
    order_bound: u32,
    table: bool,
) -> Result<CellRow> {
    let spec = ClassifySpec::new(
        g.variant(),
        g.p(),
        g.q(),
        i,
        j,
        s.u.clone(),
        s.v.clone(),
        order_bound,
    );
    let ell = spec.ell();
    let result = classify(&spec)?;
    let dim = result.dimension();
    let necessary = necessary_condition(i, j, &s.u, &s.v, g.n());
    let on = table && on_table(i, j, &s.u, &s.v);
    let mut row = CellRow {
        i,
        j,
        u: s.u.to_string(),
        v: s.v.to_string(),
        ell: ell.to_string(),
        dimension: dim,
        necessary,
        on_table: on,
        generators: Vec::new(),
        generators_in_kernel: None,
        generators_independent: None,
        renormalization_point: false,
        pass: dim <= 2 && (necessary || dim == 0),
    };
    if table {
        row.pass &= if on { dim == 2 } else { dim <= 1 };
        let ell_n = ell.to_i64().filter(|l| *l >= 0).map(|l| l as usize);
        if let Some(gens) = ell_n
            .map(|l| table_generators(g, i, j, &s.u, l))
            .transpose()?
            .flatten()
        {
            let ops: Vec<&FormOperator> = gens.iter().map(|(_, op)| op).collect();
            let in_kernel = ops.iter().all(|op| result.contains(op));
            let independent = operator_rank(&ops) == ops.len();
            row.generators = gens.iter().map(|(n, _)| n.clone()).collect();
            row.generators_in_kernel = Some(in_kernel);
            row.generators_independent = Some(independent);
            row.renormalization_point = ops.iter().any(|op| op.is_zero());
            row.pass &= in_kernel && (independent || row.renormalization_point);
        }
    }
    Ok(row)
}

fn sweep(g: &Metric, order_bound: u32, table: bool, max_ell: i64) -> Result<SweepReport> {
    let n = g.n();
    let jobs: Vec<(usize, usize, Sample)> = (0..=n)
        .flat_map(|i| {
            (0..n).flat_map(move |j| {
                cell_samples(i, j, max_ell)
                    .into_iter()
                    .map(move |s| (i, j, s))
            })
        })
        .collect();
    let rows = jobs
        .par_iter()
        .map(|(i, j, s)| classify_row(g, *i, *j, s, order_bound, table))
        .collect::<Result<Vec<_>>>()?;
    Ok(SweepReport {
        p: g.p(),
        q: g.q(),
        variant: g.variant(),
        order_bound,
        rows,
    })
}

/// Sweeps all `5 × 4` cells of the `n = 4` table for `R^{p,q}_+`, checking
/// dimension 2 with the listed generators on the table and dimension
/// `≤ 1` elsewhere.
pub fn table_n4(p: usize, q: usize, order_bound: u32) -> Result<SweepReport> {
    if p + q != 4 || p == 0 {
        return Err(crate::error::SboError::InadmissibleSpec(format!(
            "the table needs p + q = 4 with p ≥ 1, got ({p},{q})"
        )));
    }
    sweep(
        &Metric::new(p, q, Variant::Plus),
        order_bound,
        true,
        order_bound as i64,
    )
}

/// Sweeps all cells checking only the general bounds: dimension `≤ 2`,
/// and `0` where the necessary condition fails.
pub fn dimension_sweep(g: &Metric, order_bound: u32) -> Result<SweepReport> {
    sweep(g, order_bound, false, order_bound as i64)
}
