//! Exit criteria. Each criterion prints one PASS/FAIL line; run with
//! `cargo test --test acceptance -- --nocapture` to see them.

use std::path::Path;
use std::process::Command;
use std::time::{Duration, Instant};

use num_traits::{One, ToPrimitive};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use gabor_lattice::algebra::{
    int, rat, rat_from_int, scale_to_integer, smith_normal_form, Integer, RatMatrix, Rational,
};
use gabor_lattice::corpus;
use gabor_lattice::decision::{
    invariant_factor_criterion, multiwindow_bound, schwartz_frame_criterion,
    small_covolume_guarantee, FrameStatus,
};
use gabor_lattice::invariants::{compute_invariants, subgroup_index_from_basis, LatticeInvariants};
use gabor_lattice::oracle::scan_subgroup;
use gabor_lattice::par::{self, Execution};
use gabor_lattice::skew::verify_skew_normal_form;
use gabor_lattice::Lattice;

const CORPUS_SEED: u64 = 0x6ab0_2024;
const CORPUS_SIZE: usize = 240;
const MAX_D: usize = 3;

struct Outcome {
    id: usize,
    name: &'static str,
    passed: bool,
    detail: String,
    elapsed: Duration,
    budget: Option<Duration>,
}

fn run(
    id: usize,
    name: &'static str,
    budget: Option<Duration>,
    f: impl FnOnce() -> Result<String, String>,
) -> Outcome {
    let start = Instant::now();
    let res = f();
    let elapsed = start.elapsed();
    let in_budget = budget.is_none_or(|b| elapsed <= b);
    let (passed, detail) = match res {
        Ok(d) if in_budget => (true, d),
        Ok(d) => (false, format!("{d}; over time budget")),
        Err(e) => (false, e),
    };
    Outcome {
        id,
        name,
        passed,
        detail,
        elapsed,
        budget,
    }
}

fn diagonal_family(d: usize, q: i64) -> Lattice {
    let mut diag = vec![rat(1, 1); 2 * d];
    diag[2 * d - 1] = rat(1, q);
    Lattice::new(d, RatMatrix::diagonal(&diag)).unwrap()
}

fn corpus() -> Vec<Lattice> {
    corpus::standard_corpus(&mut ChaCha8Rng::seed_from_u64(CORPUS_SEED), CORPUS_SIZE, MAX_D)
}

fn analyzed(lattices: &[Lattice]) -> Vec<LatticeInvariants> {
    par::map(lattices, Execution::Parallel, |l| compute_invariants(l).unwrap())
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn criterion_1() -> Result<String, String> {
    let mut checked = 0;
    for d in 1..=4 {
        for q in 2..=10 {
            let inv = compute_invariants(&diagonal_family(d, q)).map_err(|e| e.to_string())?;
            let status = schwartz_frame_criterion(&inv).status;
            ensure((status == FrameStatus::Guaranteed) == (q as usize > d), || {
                format!("d={d} q={q}: {status}")
            })?;
            checked += 1;
        }
    }
    Ok(format!("{checked} (d, q) pairs"))
}

fn criterion_2(lattices: &[Lattice], invs: &[LatticeInvariants]) -> Result<String, String> {
    for (i, (l, inv)) in lattices.iter().zip(invs).enumerate() {
        let a = inv.arithmetic.as_ref().unwrap();
        let prod: Integer = a.h.iter().product();
        let from_factors = Rational::new(prod, num_traits::pow(a.order.clone(), inv.d));
        ensure(l.covolume() == from_factors, || format!("lattice {i}: |det M| != h/r^d"))?;
    }
    Ok(format!("{} lattices", lattices.len()))
}

fn criterion_3(lattices: &[Lattice], invs: &[LatticeInvariants]) -> Result<String, String> {
    let bad: Vec<usize> = par::map(
        &lattices.iter().zip(invs).enumerate().collect::<Vec<_>>(),
        Execution::Parallel,
        |(i, (l, inv))| {
            let a = inv.arithmetic.as_ref().unwrap();
            let n = scale_to_integer(l.associated_skew_matrix().entries(), &a.order).unwrap();
            let pairs: Vec<Integer> = a.h.iter().flat_map(|h| [h.clone(), h.clone()]).collect();
            let ok = smith_normal_form(&n).unwrap().diagonal() == pairs
                && verify_skew_normal_form(&n, &a.normal_form);
            (!ok).then_some(*i)
        },
    )
    .into_iter()
    .flatten()
    .collect();
    ensure(bad.is_empty(), || format!("failing lattices {bad:?}"))?;
    Ok(format!("{} lattices", lattices.len()))
}

fn criterion_4(lattices: &[Lattice], invs: &[LatticeInvariants]) -> Result<String, String> {
    let key = |inv: &LatticeInvariants| {
        let a = inv.arithmetic.as_ref().unwrap();
        let dec = schwartz_frame_criterion(inv);
        (
            a.order.clone(),
            a.h.clone(),
            a.n_gamma.clone(),
            a.index.clone(),
            inv.covol.clone(),
            dec.status,
            dec.window_bound_k,
        )
    };
    let mut rng = ChaCha8Rng::seed_from_u64(CORPUS_SEED ^ 4);
    let jobs: Vec<(usize, Lattice)> = lattices
        .iter()
        .enumerate()
        .flat_map(|(i, l)| {
            (0..5)
                .map(|_| (i, l.rebased(&corpus::random_unimodular(&mut rng, l.dim(), 12, 3)).unwrap()))
                .collect::<Vec<_>>()
        })
        .collect();
    let bad: Vec<usize> = par::map(&jobs, Execution::Parallel, |(i, moved)| {
        (key(&compute_invariants(moved).unwrap()) != key(&invs[*i])).then_some(*i)
    })
    .into_iter()
    .flatten()
    .collect();
    ensure(bad.is_empty(), || format!("not invariant for lattices {bad:?}"))?;
    Ok(format!("{} rebased lattices", jobs.len()))
}

fn criterion_5(invs: &[LatticeInvariants]) -> Result<String, String> {
    let mut guaranteed = 0;
    for (i, inv) in invs.iter().enumerate() {
        let thm = inv.covol < Rational::one() - inv.rc_upper_bound();
        let ifc = invariant_factor_criterion(inv).map_err(|e| e.to_string())?;
        ensure(thm == ifc, || format!("lattice {i}: inequality {thm}, invariant factors {ifc}"))?;
        guaranteed += usize::from(thm);
    }
    Ok(format!("{} lattices, {guaranteed} satisfy the inequality", invs.len()))
}

fn criterion_6(lattices: &[Lattice], invs: &[LatticeInvariants]) -> Result<String, String> {
    let mut scanned = 0;
    let mut points = 0u64;
    for (i, (l, inv)) in lattices.iter().zip(invs).enumerate() {
        let a = inv.arithmetic.as_ref().unwrap();
        let index = subgroup_index_from_basis(l, &a.omega_subgroup_generator).unwrap();
        ensure(index == rat_from_int(&a.n_gamma * &a.n_gamma), || {
            format!("lattice {i}: |det(M^-1 G)| = {index}")
        })?;
        let size = num_traits::pow(a.order.clone(), 2 * inv.d);
        if size.to_u64().is_none_or(|s| s > 100_000) {
            continue;
        }
        let scan = scan_subgroup(l, inv, 100_000, Execution::Parallel).map_err(|e| e.to_string())?;
        ensure(scan.mismatches == 0, || format!("lattice {i}: {} mismatches", scan.mismatches))?;
        let index = a.index.to_u64().unwrap();
        ensure(scan.members * index == scan.points, || {
            format!("lattice {i}: {} members of {} points, index {index}", scan.members, scan.points)
        })?;
        scanned += 1;
        points += scan.points;
    }
    ensure(scanned > 0, || "no lattice small enough to scan".into())?;
    Ok(format!("{scanned} lattices scanned, {points} points"))
}

fn criterion_7(invs: &[LatticeInvariants]) -> Result<String, String> {
    for (i, inv) in invs.iter().enumerate() {
        let dec = schwartz_frame_criterion(inv);
        let k = multiwindow_bound(inv);
        ensure(k == dec.window_bound_k, || format!("lattice {i}: k mismatch"))?;
        let coarse = gabor_lattice::algebra::floor(&inv.covol) + Integer::from(inv.d);
        ensure(k <= coarse, || format!("lattice {i}: k = {k} > {coarse}"))?;
        ensure(k.is_one() == (dec.status == FrameStatus::Guaranteed), || {
            format!("lattice {i}: k = {k}, status {}", dec.status)
        })?;
    }
    Ok(format!("{} lattices", invs.len()))
}

fn criterion_8(invs: &[LatticeInvariants]) -> Result<String, String> {
    let mut small = 0;
    for (i, inv) in invs.iter().enumerate() {
        let a = inv.arithmetic.as_ref().unwrap();
        ensure(&inv.covol * rat_from_int(a.n_gamma.clone()) >= Rational::one(), || {
            format!("lattice {i}: covol < 1/n_Gamma")
        })?;
        if small_covolume_guarantee(inv) {
            small += 1;
            ensure(schwartz_frame_criterion(inv).status == FrameStatus::Guaranteed, || {
                format!("lattice {i}: covol < 1/d but not guaranteed")
            })?;
        }
    }
    ensure(small > 0, || "no corpus lattice with covol < 1/d".into())?;
    Ok(format!("{small} lattices with covol < 1/d"))
}

fn criterion_9() -> Result<String, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(CORPUS_SEED ^ 9);
    let mut found = 0;
    let mut dens = std::collections::BTreeSet::new();
    while found < 50 {
        let l = corpus::random_rational_lattice(&mut rng, 1, 6, 12);
        if l.covolume() >= rat(1, 1) {
            continue;
        }
        let inv = compute_invariants(&l).map_err(|e| e.to_string())?;
        let status = schwartz_frame_criterion(&inv).status;
        ensure(status == FrameStatus::Guaranteed, || {
            format!("d=1 covol {} gave {status}", inv.covol)
        })?;
        dens.insert(inv.covol.denom().clone());
        found += 1;
    }
    Ok(format!("{found} lattices, {} distinct covolume denominators", dens.len()))
}

fn cli_json(file: &Path) -> Result<(Vec<u8>, i32), String> {
    let out = Command::new(env!("CARGO_BIN_EXE_gabor-lattice"))
        .args(["analyze", "--format", "json", "--input"])
        .arg(file)
        .output()
        .map_err(|e| e.to_string())?;
    Ok((out.stdout, out.status.code().unwrap_or(-1)))
}

fn criterion_10() -> Result<String, String> {
    let data = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/data");
    let cases = [
        ("z2.json", "IMPOSSIBLE"),
        ("diag_d2_q3.json", "GUARANTEED"),
        ("nonrational_half.json", "GUARANTEED"),
    ];
    for (file, expected) in cases {
        let path = data.join(file);
        let (first, code1) = cli_json(&path)?;
        let (second, code2) = cli_json(&path)?;
        ensure(code1 == 0 && code2 == 0, || format!("{file}: exit codes {code1}, {code2}"))?;
        ensure(first == second, || format!("{file}: runs differ"))?;
        let golden = data.join(file.replace(".json", ".golden.json"));
        let golden = std::fs::read(&golden).map_err(|e| format!("{}: {e}", golden.display()))?;
        ensure(first == golden, || format!("{file}: differs from golden report"))?;
        let v: serde_json::Value = serde_json::from_slice(&first).map_err(|e| e.to_string())?;
        ensure(v["status"] == expected, || format!("{file}: status {}", v["status"]))?;
    }
    Ok("3 reports byte-identical across runs and to goldens".into())
}

#[test]
fn acceptance() {
    let lattices = corpus();
    let invs = analyzed(&lattices);
    assert!(invs.iter().all(LatticeInvariants::is_rational));

    let secs = |s| Some(Duration::from_secs(s));
    let outcomes = vec![
        run(1, "diagonal family: GUARANTEED iff q > d", secs(1), criterion_1),
        run(2, "covolume equals h_1...h_d / r^d", secs(10), || criterion_2(&lattices, &invs)),
        run(3, "Smith divisors pair up; normal form verifies", secs(10), || {
            criterion_3(&lattices, &invs)
        }),
        run(4, "invariants unchanged under change of basis", None, || {
            criterion_4(&lattices, &invs)
        }),
        run(5, "invariant-factor inequality matches covolume inequality", None, || {
            criterion_5(&invs)
        }),
        run(6, "subgroup scan matches basis span; index = n^2", secs(60), || {
            criterion_6(&lattices, &invs)
        }),
        run(7, "k <= floor(covol) + d and k = 1 iff GUARANTEED", None, || criterion_7(&invs)),
        run(8, "covol < 1/d implies GUARANTEED; covol >= 1/n", None, || criterion_8(&invs)),
        run(9, "d = 1 with covol < 1 is always GUARANTEED", None, criterion_9),
        run(10, "CLI golden reports are deterministic", None, criterion_10),
    ];

    for o in &outcomes {
        let budget = o.budget.map_or(String::new(), |b| format!(" / {}s", b.as_secs()));
        println!(
            "[{}] AC-{:02} {} ({:.2?}{budget}): {}",
            if o.passed { "PASS" } else { "FAIL" },
            o.id,
            o.name,
            o.elapsed,
            o.detail
        );
    }
    let failed: Vec<usize> = outcomes.iter().filter(|o| !o.passed).map(|o| o.id).collect();
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}

#[test]
fn corpus_has_variety() {
    let invs = analyzed(&corpus());
    let statuses: std::collections::HashSet<_> =
        invs.iter().map(|i| schwartz_frame_criterion(i).status).collect();
    assert_eq!(statuses.len(), 3, "{statuses:?}");
    let max_order = invs
        .iter()
        .map(|i| i.arithmetic.as_ref().unwrap().order.clone())
        .max()
        .unwrap();
    assert!(max_order > int(1));
    let nontrivial_h = invs
        .iter()
        .any(|i| i.arithmetic.as_ref().unwrap().h.iter().any(|h| !h.is_one()));
    assert!(nontrivial_h);
}
