//! End-to-end acceptance run: one PASS/FAIL line per criterion.

#[path = "common/oracle.rs"]
mod oracle;

use std::collections::BTreeSet;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use premod::classify::{
    classify_rank5, divisibility_check, rank4_twist_filter, ClassificationReport, ClassifyConfig, Outcome, Witness,
};
use premod::data::DataSet;
use premod::exact_algebra::{root_of_unity_solutions, sylvester_landau_bound};
use premod::fusion_ring::{fp_dimensions, row_solutions, DimensionVector, FusionRing};
use premod::groups::{bundled_catalog, census, character_table, named_group, rep_fusion_ring};
use premod::premodular::{check_balancing, muger_center, s_from_balancing, PremodularDatum};
use premod::{CyclotomicNumber, IntPolynomial, RootOfUnity};

const GOLDEN: &str = include_str!("../data/golden/report.json");

type Check = Result<(), String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn int(n: i64) -> CyclotomicNumber {
    CyclotomicNumber::from_integer(n)
}

fn census_reproduction() -> Check {
    let start = Instant::now();
    let got: Vec<String> = census(&bundled_catalog(), 5, 60).map_err(|e| e.to_string())?.into_iter().map(|e| e.name).collect();
    let elapsed = start.elapsed();
    let want = ["Z5", "D8", "Q8", "D14", "Z5:Z4", "Z7:Z3", "S4", "A5"];
    ensure!(got == want, "census(5, 60) = {got:?}");
    ensure!(elapsed < Duration::from_secs(60), "census took {elapsed:?}");
    ensure!(sylvester_landau_bound(5).to_string() == "1806", "bound(5) = {}", sylvester_landau_bound(5));
    Ok(())
}

fn ring_pool() -> Vec<FusionRing> {
    let mut pool: Vec<FusionRing> = (1..=5).map(FusionRing::cyclic).collect();
    pool.push(FusionRing::pointed(4, |a, b| a ^ b));
    for g in ["S3", "D8", "Q8", "A4", "D10", "D14", "Z5:Z4", "Z7:Z3", "S4", "A5"] {
        pool.push(rep_fusion_ring(&named_group(g).unwrap()).unwrap());
    }
    let data = DataSet::bundled().unwrap();
    pool.extend(data.premodular.iter().chain(&data.modular).map(|d| d.datum.ring.clone()));
    pool
}

/// θ_x θ_y S_xy = Σ_k N_{x*y}^k θ_k d_k, evaluated without dividing by twists.
fn balancing_holds_multiplied(d: &PremodularDatum) -> bool {
    let r = d.rank();
    (0..r).all(|x| {
        (0..r).all(|y| {
            let lhs = &(&d.twist(x) * &d.twist(y)) * &d.s[x][y];
            let mut rhs = int(0);
            for k in 0..r {
                let m = d.ring.n(d.ring.dual(x), y, k);
                if m > 0 {
                    rhs = &rhs + &(&(&d.twist(k) * &d.dims[k]) * &int(m as i64));
                }
            }
            lhs == rhs
        })
    })
}

fn balancing_round_trip() -> Check {
    let pool = ring_pool();
    let orders = [1u64, 2, 3, 4, 5, 6, 7, 8, 10, 12];
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut cases = 0;
    for _ in 0..120 {
        let ring = pool[rng.random_range(0..pool.len())].clone();
        let r = ring.rank();
        ensure!(r <= 5, "rank {r} in pool");
        let dims = fp_dimensions(&ring).map_err(|e| e.to_string())?;
        let mut twists = vec![RootOfUnity::one()];
        for _ in 1..r {
            let n = orders[rng.random_range(0..orders.len())];
            twists.push(RootOfUnity::new(rng.random_range(0..n as i64), n));
        }
        // duals share a twist
        for x in 0..r {
            let y = ring.dual(x);
            if y < x {
                twists[x] = twists[y];
            }
        }
        let s = s_from_balancing(&ring, &dims, &twists);
        let datum = PremodularDatum::new(ring, dims, twists.clone(), Some(s)).map_err(|e| e.to_string())?;
        let v = check_balancing(&datum);
        ensure!(v.is_empty(), "twists {twists:?}: {} balancing violations", v.len());
        ensure!(balancing_holds_multiplied(&datum), "multiplied-out balancing fails for twists {twists:?}");
        let (x, y) = (rng.random_range(0..r), rng.random_range(0..r));
        let mut bad = datum.clone();
        bad.s[x][y] = &bad.s[x][y] + &CyclotomicNumber::from_rational(premod::Rational::new(1.into(), 1000.into()));
        let v = check_balancing(&bad);
        ensure!(v.len() == 1 && (v[0].x, v[0].y) == (x, y), "perturbing S[{x}][{y}] reported {v:?}");
        cases += 1;
    }
    ensure!(cases >= 100, "only {cases} cases");
    Ok(())
}

fn rank4_center_groups() -> Vec<(String, i64)> {
    census(&bundled_catalog(), 4, 60).unwrap().into_iter().map(|e| (e.name, e.order as i64)).collect()
}

fn last_entry_is_minus_center_dim() -> Check {
    let data = DataSet::bundled().unwrap();
    for nd in &data.premodular {
        let d = &nd.datum;
        let r = d.rank();
        let c = muger_center(d);
        if c.rank() == r - 1 {
            let dim: CyclotomicNumber = c.indices.iter().map(|&i| &d.dims[i] * &d.dims[i]).sum();
            ensure!(d.s[r - 1][r - 1] == -dim.clone(), "{}: S[{}][{}] = {}", nd.label, r - 1, r - 1, d.s[r - 1][r - 1].pretty());
        }
    }
    let mut seen_small = false;
    for (g, order) in rank4_center_groups() {
        let ring = rep_fusion_ring(&named_group(&g).unwrap()).unwrap();
        for s in rank4_twist_filter(&ring).map_err(|e| e.to_string())? {
            let d = &s.datum;
            let fresh = s_from_balancing(&d.ring, &d.dims, &d.twists);
            ensure!(fresh[4][4] == int(-order), "Rep({g}), θ = {}: S[4][4] = {}", s.theta, fresh[4][4].pretty());
            ensure!(muger_center(d).indices == [0, 1, 2, 3], "Rep({g}), θ = {}: center {:?}", s.theta, muger_center(d).indices);
            seen_small |= order == 4;
        }
    }
    ensure!(seen_small, "no |G| = 4 survivor to exhibit S[4][4] = -4");
    Ok(())
}

fn twist_filter_reproduction() -> Check {
    let sqrt5 = CyclotomicNumber::sqrt_int(5);
    let sqrt3 = CyclotomicNumber::sqrt_int(3);
    let q = (&int(1) + &sqrt5).div(&int(4)).map_err(|e| e.to_string())?;
    ensure!(!q.is_algebraic_integer(), "(1+√5)/4 reported integral");
    let q = int(2).div(&sqrt3).map_err(|e| e.to_string())?;
    ensure!(!q.is_algebraic_integer(), "2/√3 reported integral");
    ensure!(matches!(divisibility_check(&int(10), &int(19)), Ok(false)), "10 | 19 reported");
    let mut problems = Vec::new();
    for (g, _) in rank4_center_groups() {
        let ring = rep_fusion_ring(&named_group(&g).unwrap()).unwrap();
        let survivors = rank4_twist_filter(&ring).map_err(|e| e.to_string())?;
        let orders: BTreeSet<u64> = survivors.iter().map(|s| s.theta.order()).collect();
        let ds: BTreeSet<String> = survivors.iter().map(|s| s.d.pretty()).collect();
        let (want_orders, want_d): (&[u64], CyclotomicNumber) = match g.as_str() {
            "Z4" | "Z2xZ2" => (&[10], &int(1) + &sqrt5),
            "D10" => (&[4, 12], int(3)),
            "A4" => (&[4, 12], &int(2) * &sqrt3),
            _ => return Err(format!("unexpected rank-4 group {g}")),
        };
        if orders.iter().copied().collect::<Vec<_>>() != want_orders {
            problems.push(format!("Rep({g}): surviving orders {orders:?}, expected {want_orders:?}"));
        }
        if !survivors.is_empty() && !survivors.iter().all(|s| s.d == want_d) {
            problems.push(format!("Rep({g}): d in {ds:?}, expected {}", want_d.pretty()));
        }
        if g == "D10" && survivors.iter().any(|s| s.d == int(3)) {
            let dim = &int(10) + &int(9);
            ensure!(dim == int(19), "dim for d = 3 is {}", dim.pretty());
        }
    }
    ensure!(problems.is_empty(), "{}", problems.join("; "));
    Ok(())
}

fn report() -> ClassificationReport {
    classify_rank5(&DataSet::bundled().unwrap(), &ClassifyConfig::default()).unwrap()
}

fn z3_contradiction(rep: &ClassificationReport) -> Check {
    let node = rep.find("center Rep(Z3)").ok_or("no Z3 branch")?;
    let Some(Outcome::Eliminated { witness: Witness::NoRootOfUnity { polynomial, .. } }) = &node.outcome else {
        return Err(format!("Z3 branch outcome {:?}", node.outcome));
    };
    let want = IntPolynomial::from_i64(&[1, 5, 1]);
    let p = polynomial.primitive_part();
    ensure!(p == want || p == want.neg(), "polynomial {}", polynomial.display_var("θ"));
    ensure!(root_of_unity_solutions(polynomial).is_empty(), "roots found for {}", polynomial.display_var("θ"));
    // the roots (−5 ± √21)/2 are real and ≠ ±1
    let disc = 21f64.sqrt();
    ensure!(((-5.0 + disc) / 2.0f64).abs() < 1.0 && ((-5.0 - disc) / 2.0f64).abs() > 1.0, "root moduli");
    Ok(())
}

fn diophantine_split() -> Check {
    let dims = DimensionVector::from_integers(&[1, 1, 2, 3, 3]);
    let rows = row_solutions(&dims, 3, 3, &[(0, 1), (1, 0)]);
    let got: BTreeSet<Vec<u32>> = rows.admissible.iter().cloned().collect();
    let want: BTreeSet<Vec<u32>> = [vec![1, 0, 1, 2, 0], vec![1, 0, 1, 1, 1], vec![1, 0, 1, 0, 2]].into_iter().collect();
    ensure!(got == want && rows.admissible.len() == 3, "admissible {:?}", rows.admissible);
    ensure!(rows.pruned.contains(&vec![1, 0, 4, 0, 0]), "pruned {:?}", rows.pruned);
    ensure!(rows.pruned.iter().all(|r| r[2] == 4), "pruned rows outside the N2 = 4 family: {:?}", rows.pruned);
    Ok(())
}

fn final_report(first: &ClassificationReport, elapsed: Duration) -> Check {
    ensure!(elapsed < Duration::from_secs(300), "classification took {elapsed:?}");
    let second = report();
    ensure!(first.to_json() == second.to_json(), "two runs differ");
    let s = &first.summary;
    let names = |v: &[premod::classify::SummaryEntry]| v.iter().map(|e| e.name.clone()).collect::<BTreeSet<_>>();
    let set = |v: &[&str]| v.iter().map(|s| s.to_string()).collect::<BTreeSet<_>>();
    ensure!(
        names(&s.symmetric) == set(&["Rep(Z5)", "Rep(D8)", "Rep(Q8)", "Rep(D14)", "Rep(Z5:Z4)", "Rep(Z7:Z3)", "Rep(S4)", "Rep(A5)"])
            && s.symmetric.len() == 8,
        "symmetric {:?}",
        names(&s.symmetric)
    );
    ensure!(s.symmetric.iter().all(|e| e.twists.iter().all(|t| t == "1")), "symmetric twists not trivial");
    ensure!(
        names(&s.modular) == set(&["SU(2)_4", "SU(2)_9/Z2", "SU(3)_4/Z3", "SU(5)_1"]) && s.modular.len() == 4,
        "modular {:?}",
        names(&s.modular)
    );
    ensure!(s.modular.iter().all(|e| e.center_rank == 1), "modular center rank");
    ensure!(s.properly_premodular.len() == 4, "{} properly premodular", s.properly_premodular.len());
    let get = |n: &str| s.properly_premodular.iter().find(|e| e.name == n).ok_or(format!("{n} missing"));
    let v = |x: &[&str]| x.iter().map(|s| s.to_string()).collect::<Vec<_>>();
    let s4 = get("Rep(S4)-type")?;
    ensure!(s4.dims == v(&["1", "1", "2", "3", "3"]) && s4.twists == v(&["1", "1", "1", "-1", "-1"]), "Rep(S4)-type {s4:?}");
    ensure!(s4.center_rank == 3, "Rep(S4)-type center rank {}", s4.center_rank);
    let d8 = get("Rep(D8)-type")?;
    ensure!(d8.dims == v(&["1", "1", "2", "1", "1"]), "Rep(D8)-type dims {:?}", d8.dims);
    ensure!(d8.twists[..2] == v(&["1", "1"]) && d8.twists[3..] == v(&["-1", "-1"]) && d8.center_rank == 2, "Rep(D8)-type {d8:?}");
    let d14 = get("Rep(D14)-type")?;
    ensure!(d14.dims == v(&["1", "1", "2", "2", "2"]) && d14.center_rank == 2, "Rep(D14)-type {d14:?}");
    let psu = get("PSU(2)_8-type")?;
    let phi = CyclotomicNumber::golden_ratio();
    let want = v(&["1", "1", &(&phi * &phi).pretty(), &(&phi * &phi).pretty(), &(&int(2) * &phi).pretty()]);
    ensure!(psu.dims == want && psu.center_rank == 2, "PSU(2)_8-type {psu:?}");
    ensure!(first.verify().is_empty(), "report verification: {:?}", first.verify());
    Ok(())
}

fn theta_polynomial(rep: &ClassificationReport) -> Check {
    let mut found = None;
    for (_, leaf) in rep.leaves() {
        if let Some(Outcome::Realized { datum }) = &leaf.outcome {
            if datum.name == "Rep(D8)-type" {
                found = datum.theta_condition.clone();
            }
        }
    }
    let t = found.ok_or("Rep(D8)-type branch has no θ-condition report")?;
    ensure!(t.monic && t.coefficients.iter().all(|p| p.is_monic()), "not monic: {:?}", t.polynomials);
    let deg = t.degree.ok_or("degree not reported")?;
    ensure!(t.coefficients.iter().filter_map(|p| p.degree()).max() == Some(deg), "reported degree {deg} disagrees");
    ensure!(!t.admissible.is_empty(), "no root-of-unity solutions listed");
    for p in &t.coefficients {
        for z in root_of_unity_solutions(p) {
            ensure!(t.admissible.contains(&z), "solution {z} of {} not listed", p.display_var("θ"));
        }
    }
    ensure!(GOLDEN.contains(&format!("\"degree\":{deg}")), "golden file lacks degree {deg}");
    println!("    θ-condition degree {deg}, admissible orders {:?}", t.admissible_orders);
    Ok(())
}

fn oracle_equivalence() -> Check {
    for dims in oracle::all_dims() {
        let want = oracle::brute_force(&dims);
        ensure!(oracle::searched(&dims, true) == want, "pruned search differs for {dims:?}");
        ensure!(oracle::searched(&dims, false) == want, "unpruned search differs for {dims:?}");
    }
    Ok(())
}

fn character_tables() -> Check {
    let catalog = bundled_catalog();
    ensure!(catalog.iter().all(|e| e.order <= 60), "catalog exceeds order 60");
    for entry in &catalog {
        let g = entry.build().map_err(|e| e.to_string())?;
        let t = character_table(&g).map_err(|e| e.to_string())?;
        ensure!(t.row_orthogonality_holds(), "{}: row orthogonality", entry.name);
        ensure!(t.column_orthogonality_holds(), "{}: column orthogonality", entry.name);
        ensure!(t.degrees.iter().map(|d| d * d).sum::<u64>() == g.order() as u64, "{}: Σ d² ≠ |G|", entry.name);
        let ring = rep_fusion_ring(&g).map_err(|e| e.to_string())?;
        ensure!(ring.validate().is_empty(), "{}: {:?}", entry.name, ring.validate());
    }
    Ok(())
}

fn run(name: &str, f: impl FnOnce() -> Check) -> bool {
    let start = Instant::now();
    let res = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|p| {
        Err(p.downcast_ref::<String>().cloned().or(p.downcast_ref::<&str>().map(|s| s.to_string())).unwrap_or_default())
    });
    let secs = start.elapsed().as_secs_f64();
    match res {
        Ok(()) => {
            println!("PASS {name} ({secs:.1}s)");
            true
        }
        Err(e) => {
            println!("FAIL {name} ({secs:.1}s): {e}");
            false
        }
    }
}

fn main() -> ExitCode {
    let start = Instant::now();
    let rep = report();
    let elapsed = start.elapsed();
    let results = [
        run("1 census of rank-5 groups up to order 60", census_reproduction),
        run("2 balancing round trip on random data", balancing_round_trip),
        run("3 last S entry equals minus the center dimension", last_entry_is_minus_center_dim),
        run("4 twist filter over rank-4 centers", twist_filter_reproduction),
        run("5 Z3 center orthogonality has no root of unity", || z3_contradiction(&rep)),
        run("6 S3 center row split", diophantine_split),
        run("7 final classification report", || final_report(&rep, elapsed)),
        run("8 D8 theta-condition polynomial", || theta_polynomial(&rep)),
        run("9 pruned search equals brute force", oracle_equivalence),
        run("10 character tables of the catalog", character_tables),
    ];
    let failed = results.iter().filter(|ok| !**ok).count();
    println!("{} passed, {failed} failed", results.len() - failed);
    if failed == 0 { ExitCode::SUCCESS } else { ExitCode::FAILURE }
}
