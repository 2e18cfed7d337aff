use std::io::Read;

use latpoly::census::{self, CensusQuery, Constraint, GrowthRow, Statistic};
use latpoly::equivalence::{
    canonical_form, divides_bound, equivalence_test, o_d_order, unimodular_group, Equivalence,
};
use latpoly::families::{self, Rho, SubsetSelection};
use latpoly::json::{map_to_json, polytope_from_json, polytope_to_json};
use latpoly::{Error, Point, Polytope, Result};
use num_bigint::BigInt;
use serde_json::{json, Value};

use crate::output::{Check, CommandResult};
use crate::{CensusArgs, CensusStatistic, ConstructArgs, Family, Subsets, Theorem1Args};

fn finish(r: Result<(Value, Vec<Check>)>) -> CommandResult {
    match r {
        Ok((payload, diagnostics)) => CommandResult::ok(payload, diagnostics),
        Err(e) => CommandResult::from_error(e, vec![], None),
    }
}

fn read_polytope(path: &str) -> Result<Polytope> {
    let mut text = String::new();
    let read = if path == "-" {
        std::io::stdin().read_to_string(&mut text).map(|_| ())
    } else {
        std::fs::read_to_string(path).map(|t| text = t)
    };
    read.map_err(|e| Error::InvalidInput(format!("cannot read {path}: {e}")))?;
    polytope_from_json(&text)
}

/// Where `P` is centrally symmetric: `v_min + v_max` is twice the centre
/// whenever one exists.
fn center_check(p: &Polytope) -> Check {
    let v = p.vertices();
    let sum = v[0].add(&v[v.len() - 1]);
    let symmetric = v.iter().all(|x| v.binary_search(&sum.sub(x)).is_ok());
    if !symmetric {
        return Check::new("center", false, "not centrally symmetric");
    }
    let two = BigInt::from(2);
    if sum.coords().iter().all(|c| c % &two == BigInt::from(0)) {
        let c: Vec<String> = sum.coords().iter().map(|c| (c / &two).to_string()).collect();
        Check::new("center", true, format!("lattice center ({})", c.join(", ")))
    } else {
        let c: Vec<String> = sum.coords().iter().map(|c| format!("{c}/2")).collect();
        Check::new("center", false, format!("non-lattice center ({})", c.join(", ")))
    }
}

fn describe(p: &Polytope) -> Result<Value> {
    latpoly::limits::check_enumerable(p)?;
    Ok(json!({
        "polytope": polytope_to_json(p),
        "lattice_points": p.num_lattice_points(),
        "normalized_volume": p.normalized_volume().to_string(),
        "symmetry_center": p.symmetry_center(),
    }))
}

fn need<T>(v: Option<T>, flag: &str, family: &str) -> Result<T> {
    v.ok_or_else(|| Error::InvalidInput(format!("family {family} needs {flag}")))
}

pub fn construct(a: &ConstructArgs) -> CommandResult {
    finish(construct_inner(a))
}

fn construct_inner(a: &ConstructArgs) -> Result<(Value, Vec<Check>)> {
    let d = a.dim;
    let r = || need(a.r, "-r", "K/B/C/Q/H/Hprime");
    let mut checks = Vec::new();
    let mut payload = match a.family {
        Family::Ball => {
            let m = need(a.m, "-m", "ball")?;
            let rho: Rho = need(a.rho.as_deref(), "--rho", "ball")?.parse()?;
            let mut v = describe(&families::ball_polytope(d, m, rho)?)?;
            v["params"] = json!({ "d": d, "m": m, "rho": rho });
            v
        }
        Family::K => {
            let r = r()?;
            let mut v = describe(&families::k_polytope(d, r)?)?;
            v["params"] = json!({ "d": d, "r": r });
            v
        }
        Family::B => {
            // B lies in x_d = 0, so it is reported as a (d-1)-dimensional ball.
            let r = r()?;
            let pts: Vec<Point> = families::base_disk_points(d, r)?;
            let flat: Vec<Point> = pts.iter().map(|p| Point::new(p.coords()[..d - 1].to_vec())).collect();
            let mut v = if d >= 2 && flat.len() > 1 {
                describe(&Polytope::convex_hull(&flat, d - 1)?)?
            } else {
                json!({})
            };
            v["params"] = json!({ "d": d, "r": r });
            v["embedding"] = json!("hyperplane x_d = 0");
            v["points"] = json!(pts);
            v["point_count"] = json!(pts.len());
            v
        }
        Family::C | Family::Q => {
            let r = r()?;
            let pts: Vec<Point> =
                if matches!(a.family, Family::C) { families::cylinder_points(d, r)? } else { families::q_points(d, r)? };
            let hull = Polytope::convex_hull(&pts, d)?;
            let mut v = describe(&hull)?;
            v["params"] = json!({ "d": d, "r": r });
            v["point_count"] = json!(pts.len());
            v
        }
        Family::H | Family::HPrime => {
            let r = r()?;
            let h = families::h_polytope::<BigInt>(d, r)?;
            let hp = families::h_prime_polytope::<BigInt>(d, r)?;
            let inside = hp.is_subset_of(&h);
            checks.push(Check::new(
                "Eq36",
                inside,
                format!("H' ⊆ H: |H'| = {}, |H| = {}", hp.num_lattice_points(), h.num_lattice_points()),
            ));
            let mut v = describe(if matches!(a.family, Family::H) { &h } else { &hp })?;
            v["params"] = json!({ "d": d, "r": r });
            v
        }
    };
    payload["family"] = json!(family_name(a.family));
    Ok((payload, checks))
}

fn family_name(f: Family) -> &'static str {
    match f {
        Family::Ball => "ball",
        Family::K => "K",
        Family::B => "B",
        Family::C => "C",
        Family::Q => "Q",
        Family::H => "H",
        Family::HPrime => "Hprime",
    }
}

pub fn group(file: &str, orthogonal: bool) -> CommandResult {
    finish(group_inner(file, orthogonal))
}

fn group_inner(file: &str, orthogonal: bool) -> Result<(Value, Vec<Check>)> {
    let p = read_polytope(file)?;
    let g = unimodular_group(&p)?;
    let center = center_check(&p);
    let mut payload = json!({
        "dim": p.dim(),
        "order": g.order(),
        "elements": g.elements().iter().map(map_to_json).collect::<Vec<_>>(),
    });
    let mut checks = vec![center];
    if orthogonal {
        let o = g.orthogonal_subgroup();
        payload["orthogonal_order"] = json!(o.order());
        payload["orthogonal_elements"] = json!(o.elements().iter().map(map_to_json).collect::<Vec<_>>());
    }
    if p.is_centrally_symmetric() {
        let divides = divides_bound(&p)?;
        checks.push(Check::new(
            "Corollary1",
            divides,
            format!("|G'(P)| = {} divides 2^d d! = {}", g.orthogonal_subgroup().order(), o_d_order(p.dim())),
        ));
    }
    Ok((payload, checks))
}

pub fn equiv(file1: &str, file2: &str) -> CommandResult {
    finish(equiv_inner(file1, file2))
}

fn equiv_inner(file1: &str, file2: &str) -> Result<(Value, Vec<Check>)> {
    let p = read_polytope(file1)?;
    let q = read_polytope(file2)?;
    if p.dim() != q.dim() {
        return Err(Error::DimensionMismatch { expected: p.dim(), found: q.dim() });
    }
    Ok(match equivalence_test(&p, &q)? {
        Equivalence::Equivalent(m) => {
            let verified = p.image(&m)? == q;
            (json!({ "equivalent": true, "witness": map_to_json(&m) }), vec![Check::new("witness", verified, "σ(P) = Q on vertices")])
        }
        Equivalence::Inequivalent { invariant } => (
            json!({ "equivalent": false, "invariant": invariant.unwrap_or("exhaustive search") }),
            vec![],
        ),
    })
}

pub fn canon(file: &str) -> CommandResult {
    finish(canon_inner(file))
}

fn canon_inner(file: &str) -> Result<(Value, Vec<Check>)> {
    let p = read_polytope(file)?;
    Ok((json!({ "canonical": canonical_form(&p).to_hex() }), vec![]))
}

pub fn theorem1(a: &Theorem1Args) -> CommandResult {
    let selection = match a.subsets {
        Subsets::All => SubsetSelection::All,
        Subsets::Sample => SubsetSelection::Sample { limit: a.limit, seed: a.seed },
    };
    let family = match families::theorem1_family::<BigInt>(a.dim, a.w, selection) {
        Ok(f) => f,
        Err(e) => return CommandResult::from_error(e, vec![], None),
    };
    let s = &family.setup;
    let mut checks: Vec<Check> = s.diagnostics.iter().map(Check::from).collect();
    let members: Vec<Value> = family
        .members
        .iter()
        .zip(&family.canonical_forms)
        .map(|(m, c)| {
            let mut v = json!({
                "subset": m.subset,
                "cardinality": m.result.num_lattice_points(),
                "canonical": c.to_hex(),
                "diagnostics": m.diagnostics.iter().map(Check::from).collect::<Vec<_>>(),
            });
            if a.members {
                v["polytope"] = polytope_to_json(&m.result);
            }
            v
        })
        .collect();
    let classes = family.class_count();
    let full = family.members.len() as u128 == 1u128 << s.v_prime.len().min(127);
    let bound = if full { family.guaranteed_lower_bound().ceil() as u64 } else { family.built_lower_bound() };
    checks.push(Check::new(
        "ClassBound",
        classes as u64 >= bound,
        format!("{classes} classes among {} members; bound {bound}", family.members.len()),
    ));
    let all_w = family.members.iter().all(|m| m.result.num_lattice_points() as u64 == a.w);
    checks.push(Check::new("Cardinality", all_w, format!("every member has |P| = {}", a.w)));
    let payload = json!({
        "d": s.d,
        "w": s.w,
        "r": s.r,
        "u": s.u,
        "v_prime_count": s.v_prime.len(),
        "family_size": family.members.len(),
        "class_count": classes,
        "guaranteed_lower_bound": family.guaranteed_lower_bound(),
        "built_lower_bound": family.built_lower_bound(),
        "subsets": match selection {
            SubsetSelection::All => json!("all"),
            SubsetSelection::Sample { limit, seed } => json!({ "sample": limit, "seed": seed }),
        },
        "members": members,
    });
    CommandResult::ok(payload, checks)
}

fn parse_range(s: &str) -> Result<(i64, i64)> {
    let bad = || Error::InvalidInput(format!("range must look like a..b, got {s:?}"));
    let (a, b) = match s.split_once("..") {
        Some((a, b)) => (a.trim().parse().map_err(|_| bad())?, b.trim_start_matches('=').trim().parse().map_err(|_| bad())?),
        None => {
            let v = s.trim().parse().map_err(|_| bad())?;
            (v, v)
        }
    };
    if a > b {
        return Err(bad());
    }
    Ok((a, b))
}

/// Rows so far as CSV, and the result.
pub fn census(a: &CensusArgs) -> (CommandResult, String) {
    let (statistic, constraint) = match a.statistic {
        CensusStatistic::V => (Statistic::NormalizedVolume, Constraint::None),
        CensusStatistic::VStar => (Statistic::NormalizedVolume, Constraint::CentrallySymmetric),
        CensusStatistic::Kappa => (Statistic::Cardinality, Constraint::None),
        CensusStatistic::KappaStar => (Statistic::Cardinality, Constraint::CentrallySymmetric),
        CensusStatistic::KappaPrime => (Statistic::Cardinality, Constraint::NonemptyInterior),
    };
    let (lo, hi) = match parse_range(&a.range) {
        Ok(r) => r,
        Err(e) => return (CommandResult::from_error(e, vec![], None), String::new()),
    };
    let values =
        (lo..=hi).filter(|v| !(a.odd_only && v % 2 == 0) && !(a.even_only && v % 2 != 0));
    let mut rows: Vec<GrowthRow> = Vec::new();
    let mut checks = Vec::new();
    for v in values {
        let mut q = CensusQuery::new(statistic, v, constraint);
        q.search_box = a.search_box;
        match census::enumerate_classes(&q) {
            Ok(record) => {
                checks.push(Check::new(
                    "box_sufficiency",
                    record.box_sufficiency,
                    format!("{statistic} = {v}: count {} stable at N = {}, {}, {}", record.class_count, record.search_box, record.search_box + 2, record.search_box + 4),
                ));
                rows.push(GrowthRow::from_record(&record));
            }
            Err(e) => {
                let csv = census::to_csv(&rows);
                let partial = json!({ "rows": rows, "csv": csv });
                return (CommandResult::from_error(e, checks, Some(partial)), csv);
            }
        }
    }
    let csv = census::to_csv(&rows);
    (CommandResult::ok(json!({ "rows": rows, "csv": csv }), checks), csv)
}
