//! Acceptance suite. Prints one PASS/FAIL line per criterion, then fails
//! if any criterion failed.

use std::io::Write as _;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::Command;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use serde_json::Value;

use theta_bounds::boolean::{delsarte_lp_bound, walsh_transform, zonal_sum, CubePoint, FunctionTable};
use theta_bounds::exact::rational::{binomial, from_bigint, int, parse, to_f64};
use theta_bounds::orthopoly::{jacobi, krawtchouk_table};
use theta_bounds::sphere::{
    adjoint_check, harm_dim, harmonic_decompose, harmonic_recompose, laplacian, laplacian_kernel_dim, monomials,
    zonal_kernel, MultiPoly,
};
use theta_bounds::symmetry::{
    cycle_graph, dihedral_group, hamming_graph, hyperoctahedral_group, orbit_pairs, petersen_graph, petersen_group,
    scheme_eigenmatrix, stable_set_bruteforce, theta_prime_reduced,
};
use theta_bounds::Rational;

type Check = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn cli(args: &[&str]) -> Result<String, String> {
    let out = Command::new(env!("CARGO_BIN_EXE_theta-bounds"))
        .args(args)
        .env_remove("THETA_BOUNDS_WORKERS")
        .output()
        .map_err(|e| e.to_string())?;
    let stdout = String::from_utf8_lossy(&out.stdout).into_owned();
    if !out.status.success() {
        return Err(format!("{args:?} exited {:?}: {}", out.status.code(), String::from_utf8_lossy(&out.stderr)));
    }
    Ok(stdout)
}

fn json(args: &[&str]) -> Result<Value, String> {
    serde_json::from_str(&cli(args)?).map_err(|e| e.to_string())
}

fn sphere_bound(n: usize, cos: &str, degree: Option<usize>) -> Result<(Rational, Vec<Rational>), String> {
    let n = n.to_string();
    let degree = degree.map(|d| d.to_string());
    let mut args = vec!["sphere-lp", "--n", &n, "--cos-theta", cos, "--json"];
    if let Some(d) = &degree {
        args.extend(["--degree", d]);
    }
    let v = json(&args)?;
    let field = |x: &Value| parse(x.as_str().ok_or("non-string rational")?).map_err(|e| e.to_string());
    let bound = field(&v["bound"])?;
    let coeffs = v["coeffs"].as_array().ok_or("missing coeffs")?.iter().map(field).collect::<Result<_, _>>()?;
    Ok((bound, coeffs))
}

fn kissing(n: usize, degree: Option<usize>, expected: i64) -> Check {
    let (bound, coeffs) = sphere_bound(n, "1/2", degree)?;
    ensure(bound == int(expected), || format!("bound {bound}"))?;
    Ok(format!("bound {bound} at degree {}", coeffs.len() - 1))
}

fn cross_polytope() -> Check {
    for n in 3..=16usize {
        let (bound, coeffs) = sphere_bound(n, "0", Some(2))?;
        let nn = n as i64;
        ensure(bound == int(2 * nn), || format!("n = {n}: bound {bound}"))?;
        ensure(coeffs == vec![int(0), int(nn), int(nn - 1)], || format!("n = {n}: coefficients {coeffs:?}"))?;
    }
    Ok("2n with (0, n, n-1) for n = 3..16".into())
}

fn sandwich() -> Check {
    for n in 1..=5usize {
        for d in 1..=n {
            let dists: Vec<usize> = (1..d).collect();
            let alpha = stable_set_bruteforce(&hamming_graph(n, &dists)).map_err(|e| e.to_string())?;
            let bound = delsarte_lp_bound(n, d).map_err(|e| e.to_string())?;
            ensure(bound >= int(alpha as i64), || format!("n = {n}, d = {d}: {bound} < {alpha}"))?;
        }
    }
    Ok("bound >= alpha for 1 <= d <= n <= 5".into())
}

fn sweep() -> Check {
    let text = cli(&["hamming-table", "--n-max", "64"])?;
    let mut lines = text.lines();
    ensure(lines.next() == Some("n,d,bound_exact,bound_decimal"), || "bad header".into())?;
    let mut prev: Option<(usize, Rational)> = None;
    let mut rows = 0;
    for line in lines {
        let fields: Vec<&str> = line.split(',').collect();
        ensure(fields.len() == 4, || format!("bad row {line}"))?;
        let n: usize = fields[0].parse().map_err(|_| format!("bad n in {line}"))?;
        let bound = parse(fields[2]).map_err(|e| e.to_string())?;
        if let Some((pn, pb)) = &prev {
            ensure(*pn != n || bound <= *pb, || format!("not monotone at {line}"))?;
        }
        prev = Some((n, bound));
        rows += 1;
    }
    ensure(rows == (1..=64).sum::<usize>(), || format!("{rows} rows"))?;
    Ok(format!("{rows} exact rows, nonincreasing in d"))
}

fn timed(limit: Duration, f: impl FnOnce() -> Check) -> Check {
    let start = Instant::now();
    let msg = f()?;
    let dt = start.elapsed();
    ensure(dt < limit, || format!("took {dt:.1?}, limit {limit:?}"))?;
    Ok(msg)
}

fn identities() -> Check {
    let minute = Duration::from_secs(60);
    timed(minute, || {
        for n in 0..=64usize {
            let table = krawtchouk_table(n);
            let w: Vec<BigInt> = (0..=n).map(|t| binomial(n as i64, t as i64)).collect();
            for k in 0..=n {
                for k2 in k..=n {
                    let s: BigInt = (0..=n).map(|t| &w[t] * &table[k][t] * &table[k2][t]).sum();
                    let expected = if k == k2 { (BigInt::from(1) << n) * &w[k] } else { BigInt::from(0) };
                    ensure(s == expected, || format!("Krawtchouk n = {n}, k = {k}, k' = {k2}"))?;
                }
            }
        }
        Ok(String::new())
    })?;
    timed(minute, || {
        for n in 0..=12usize {
            let table = krawtchouk_table(n);
            for k in 0..=n {
                for t in 0..=n {
                    let z = zonal_sum(n, k, t).map_err(|e| e.to_string())?;
                    ensure(BigInt::from(z) == table[k][t], || format!("zonal sum n = {n}, k = {k}, t = {t}"))?;
                }
            }
        }
        Ok(String::new())
    })?;
    timed(minute, || {
        for n in 0..=10usize {
            for y in 0..1usize << n {
                let hat = walsh_transform(&FunctionTable::<Rational>::character(&CubePoint::from_index(n, y)));
                for (y2, v) in hat.values().iter().enumerate() {
                    let expected = if y == y2 { int(1) } else { int(0) };
                    ensure(*v == expected, || format!("characters n = {n}, y = {y}, y' = {y2}"))?;
                }
            }
        }
        Ok(String::new())
    })?;
    Ok("Krawtchouk n <= 64, zonal sums n <= 12, characters n <= 10".into())
}

fn random_form(rng: &mut StdRng, n: usize, d: u32) -> MultiPoly {
    let basis = monomials(n, d);
    let coeffs: Vec<Rational> = basis.iter().map(|_| int(rng.gen_range(-9..10))).collect();
    MultiPoly::from_coeffs(n, &basis, &coeffs)
}

fn harmonic() -> Check {
    for n in 2..=4usize {
        for k in 0..=8u32 {
            let h = harm_dim(n, k as usize).map_err(|e| e.to_string())?;
            ensure(h == laplacian_kernel_dim(n, k) as u64, || format!("harm_dim n = {n}, k = {k}"))?;
        }
    }
    let mut rng = StdRng::seed_from_u64(7);
    for _ in 0..100 {
        let (n, d) = (rng.gen_range(2..=4), rng.gen_range(0..=8));
        let p = random_form(&mut rng, n, d);
        let parts = harmonic_decompose(&p).map_err(|e| e.to_string())?;
        ensure(harmonic_recompose(n, &parts) == p, || format!("reconstruction n = {n}, d = {d}"))?;
        ensure(parts.iter().all(|h| laplacian(h).is_zero()), || format!("non-harmonic part n = {n}, d = {d}"))?;
    }
    for _ in 0..100 {
        let (n, d) = (rng.gen_range(2..=4), rng.gen_range(2..=6));
        let f = random_form(&mut rng, n, d - 2);
        let g = random_form(&mut rng, n, d);
        let (lhs, rhs) = adjoint_check(&f, &g).map_err(|e| e.to_string())?;
        ensure(lhs == rhs, || format!("adjoint n = {n}, d = {d}: {lhs} vs {rhs}"))?;
    }
    for n in 3..=5usize {
        for k in 0..=4u32 {
            let q = zonal_kernel(n, k).map_err(|e| e.to_string())?;
            let p = jacobi(n, k as usize).map_err(|e| e.to_string())?;
            let c = q.eval(&int(1));
            let h = harm_dim(n, k as usize).map_err(|e| e.to_string())?;
            ensure(c == int(h as i64), || format!("Q(1) n = {n}, k = {k}"))?;
            ensure(q == p.scale(&c), || format!("zonal kernel n = {n}, k = {k}"))?;
        }
    }
    Ok("dimensions, 100 reconstructions, 100 adjoint checks, zonal kernels".into())
}

fn symmetry() -> Check {
    let err = |e: theta_bounds::Error| e.to_string();
    let c5 = theta_prime_reduced(&cycle_graph(5), &dihedral_group(5)).map_err(err)?;
    ensure((c5 - 5f64.sqrt()).abs() <= 1e-6, || format!("C5 gives {c5}"))?;
    let pet = theta_prime_reduced(&petersen_graph(), &petersen_group()).map_err(err)?;
    ensure((pet - 4.0).abs() <= 1e-6, || format!("Petersen gives {pet}"))?;
    for n in 1..=5usize {
        let group = hyperoctahedral_group(n);
        for d in 1..=n {
            let dists: Vec<usize> = (1..d).collect();
            let theta = theta_prime_reduced(&hamming_graph(n, &dists), &group).map_err(err)?;
            let lp = to_f64(&delsarte_lp_bound(n, d).map_err(err)?);
            ensure((theta - lp).abs() <= 1e-6, || format!("cube n = {n}, d = {d}: {theta} vs {lp}"))?;
        }
    }
    let spec = scheme_eigenmatrix(&orbit_pairs(&hyperoctahedral_group(3))).map_err(err)?;
    let p = spec.exact().ok_or("no exact eigenmatrix for the 3-cube")?;
    let table = krawtchouk_table(3);
    for k in 0..=3 {
        for t in 0..=3 {
            ensure(p[k][t] == from_bigint(table[t][k].clone()), || format!("3-cube entry ({k}, {t})"))?;
        }
    }
    Ok(format!("C5 {c5:.9}, Petersen {pet:.9}, cube n <= 5, exact 3-cube"))
}

fn certificates() -> Check {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let cases = [("8", "1/2", "10"), ("24", "1/2", "10"), ("4", "0", "2"), ("2", "1/2", "6"), ("3", "1/2", "4")];
    let mut good = Vec::new();
    for (n, c, degree) in cases {
        let path = dir.path().join(format!("cert_{n}.json"));
        let p = path.to_str().ok_or("path")?;
        cli(&["sphere-lp", "--n", n, "--cos-theta", c, "--degree", degree, "--emit-cert", p])?;
        let out = cli(&["verify", "--certificate", p])?;
        ensure(out.starts_with("VALID"), || format!("n = {n}: {out}"))?;
        good.push(path);
    }
    let text = std::fs::read_to_string(&good[0]).map_err(|e| e.to_string())?;
    let cert: Value = serde_json::from_str(&text).map_err(|e| e.to_string())?;
    let mut negative = cert.clone();
    negative["coeffs"][1] = Value::from(format!("-{}", cert["coeffs"][1].as_str().ok_or("coeff")?));
    let mut bound = cert.clone();
    bound["bound"] = Value::from("241");
    let mut loose = cert.clone();
    loose["cos_theta"] = Value::from("3/5");
    for (name, bad, code) in
        [("negative", negative, "NegativeCoefficient"), ("bound", bound, "BoundMismatch"), ("interval", loose, "IntervalViolation")]
    {
        let path = dir.path().join(format!("{name}.json"));
        std::fs::write(&path, bad.to_string()).map_err(|e| e.to_string())?;
        let out = Command::new(env!("CARGO_BIN_EXE_theta-bounds"))
            .args(["verify", "--certificate", path.to_str().ok_or("path")?])
            .output()
            .map_err(|e| e.to_string())?;
        let stdout = String::from_utf8_lossy(&out.stdout);
        ensure(out.status.code() == Some(1) && stdout.trim() == format!("INVALID reason={code}"), || {
            format!("{name}: {stdout} exit {:?}", out.status.code())
        })?;
    }
    Ok(format!("{} certificates verify, 3 corruptions rejected", good.len()))
}

// written to the raw handle so the lines survive the harness's output capture
fn report(line: String) {
    let _ = writeln!(std::io::stderr(), "{line}");
}

#[test]
fn acceptance_criteria() {
    let criteria: Vec<(&str, Duration, Box<dyn Fn() -> Check>)> = vec![
        ("kissing number in dimension 8", Duration::from_secs(30), Box::new(|| kissing(8, None, 240))),
        ("kissing number in dimension 24", Duration::from_secs(300), Box::new(|| kissing(24, Some(12), 196560))),
        ("cross-polytope bounds", Duration::MAX, Box::new(cross_polytope)),
        ("sandwich on small cubes", Duration::from_secs(60), Box::new(sandwich)),
        ("binary LP sweep to n = 64", Duration::from_secs(600), Box::new(sweep)),
        ("exact identity suites", Duration::MAX, Box::new(identities)),
        ("harmonic machinery", Duration::MAX, Box::new(harmonic)),
        ("symmetry reduction", Duration::MAX, Box::new(symmetry)),
        ("certificate round trip", Duration::MAX, Box::new(certificates)),
    ];
    let mut failed = Vec::new();
    for (i, (name, limit, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = catch_unwind(AssertUnwindSafe(|| timed(*limit, check)))
            .unwrap_or_else(|_| Err("panicked".into()));
        let dt = start.elapsed().as_secs_f64();
        match result {
            Ok(msg) => report(format!("PASS {} {name}: {msg} ({dt:.1} s)", i + 1)),
            Err(msg) => {
                report(format!("FAIL {} {name}: {msg} ({dt:.1} s)", i + 1));
                failed.push(i + 1);
            }
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
