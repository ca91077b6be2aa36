//! End-to-end acceptance run. Prints one PASS/FAIL line per criterion and
//! exits non-zero if any fails.

use std::path::PathBuf;
use std::process::Command;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use nested_squares::verify::{run_suite, SuiteParams};
use nested_squares::{
    build_bhaskara, build_choupei, build_proof2, ratio, verify_bhaskara, verify_closed_form,
    verify_d_telescoping, verify_fractal1_tail, verify_geometric_sum, verify_proof1,
    verify_recursive, ExactValue, Figure, IdentityCheck, OrientationString, QuadExt, Rational,
    RenderFormat, RenderOptions, TriangleSides, VerifyError,
};

type Outcome = Result<(), String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Outcome {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn exact_zero(c: &IdentityCheck) -> Outcome {
    ensure(c.pass && c.residual.is_zero(), || format!("{}: {} vs {} (residual {})", c.name, c.lhs, c.rhs, c.residual))
}

fn all_zero(checks: &[IdentityCheck]) -> Outcome {
    checks.iter().try_for_each(exact_zero)
}

fn within(start: Instant, limit: Duration) -> Outcome {
    let took = start.elapsed();
    ensure(took < limit, || format!("took {took:?}, limit {limit:?}"))
}

fn sides(a: i64, b: i64) -> TriangleSides {
    TriangleSides::from_integers(a, b).unwrap()
}

fn random_sides(rng: &mut ChaCha8Rng) -> TriangleSides {
    let mut r = || ratio(rng.gen_range(1..=10_000), rng.gen_range(1..=10_000));
    TriangleSides::new(r(), r()).unwrap()
}

fn random_string(rng: &mut ChaCha8Rng, max_len: usize) -> OrientationString {
    let len = rng.gen_range(1..=max_len);
    OrientationString::new((0..len).map(|_| rng.gen()).collect()).unwrap()
}

fn rational(v: &ExactValue) -> Option<Rational> {
    match v {
        ExactValue::Rational(r) => Some(r.clone()),
        ExactValue::Quad(q) => q.to_rational(),
    }
}

fn proof1() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let mut cases = vec![sides(3, 4), sides(5, 12), sides(1, 1)];
    cases.extend((0..50).map(|_| random_sides(&mut rng)));
    for s in &cases {
        exact_zero(&verify_proof1(s).map_err(|e| e.to_string())?)?;
    }
    within(start, Duration::from_secs(1))
}

fn telescoping() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for _ in 0..100 {
        let t = random_sides(&mut rng);
        let s = random_string(&mut rng, 12);
        exact_zero(&verify_recursive(&t, &s).map_err(|e| e.to_string())?)?;
    }
    let t = sides(3, 4);
    let mut reference: Option<(ExactValue, ExactValue)> = None;
    for s in OrientationString::all_of_length(12) {
        let c = verify_recursive(&t, &s).map_err(|e| e.to_string())?;
        exact_zero(&c)?;
        let pair = (c.lhs, c.rhs);
        match &reference {
            None => reference = Some(pair),
            Some(r) => ensure(r == &pair, || format!("string {s} changes the sum"))?,
        }
    }
    within(start, Duration::from_secs(30))
}

fn closed_forms() -> Outcome {
    for t in [sides(3, 4), sides(3, 7)] {
        for s in ["1".repeat(20), "0".repeat(20), "10".repeat(10), "11010010001110101100".to_string()] {
            let s: OrientationString = s.parse().unwrap();
            all_zero(&verify_closed_form(&t, &s).map_err(|e| e.to_string())?)?;
        }
    }
    let fig = build_choupei(&sides(3, 4), &"11".parse().unwrap()).unwrap();
    ensure(fig.layers[1].a_n_sq == ratio(225, 49), || format!("a_2^2 = {}", fig.layers[1].a_n_sq))
}

fn fractal_tail() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for _ in 0..50 {
        let t = random_sides(&mut rng);
        for n in 1..=20 {
            all_zero(&verify_fractal1_tail(&t, n).map_err(|e| e.to_string())?)?;
        }
    }
    Ok(())
}

fn proof2() -> Outcome {
    let fig = build_proof2(&sides(3, 4), 1).map_err(|e| e.to_string())?;
    let d1 = fig.feet[0].d.clone();
    let c2 = fig.base.layers[1].c_n_sq.perfect_square_root().unwrap().unwrap();
    ensure(d1 == ratio(12, 7), || format!("d1 = {d1}"))?;
    ensure(c2 == ratio(25, 7), || format!("c2 = {c2}"))?;
    ensure(Rational::from(2) * &d1 + &c2 == Rational::from(7), || "2 d1 + c2 != 7".into())?;
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..50 {
        let t = random_sides(&mut rng);
        let checks = nested_squares::verify_proof2(&t).map_err(|e| e.to_string())?;
        ensure(checks.iter().any(|c| c.name.contains("carrier")), || "no orthogonality checks".into())?;
        all_zero(&checks)?;
        let report = run_suite(&t, &SuiteParams::Proof2(3)).map_err(|e| e.to_string())?;
        all_zero(&report.checks)?;
    }
    Ok(())
}

fn d_telescoping() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for _ in 0..50 {
        let t = random_sides(&mut rng);
        for n in 1..=10 {
            exact_zero(&verify_d_telescoping(&t, n).map_err(|e| e.to_string())?)?;
        }
    }
    Ok(())
}

fn bhaskara() -> Outcome {
    let t = sides(3, 4);
    let d = t.c1_sq();
    let q = |r: Rational| QuadExt::from_rational(r, d).unwrap();
    let four = Rational::from(4);
    let one = build_bhaskara(&t, 1).map_err(|e| e.to_string())?;
    let l0 = &one.layers[0];
    ensure(l0.triangle_area.scale(&four) == q(24.into()), || "depth 1 triangles != 24".into())?;
    ensure(nested_squares::geometry::shoelace_area(&l0.inner) == q(1.into()), || "depth 1 inner != 1".into())?;
    let two = build_bhaskara(&t, 2).map_err(|e| e.to_string())?;
    let l1 = &two.layers[1];
    ensure(l1.triangle_area.scale(&four) == q(ratio(24, 25)), || "depth 2 triangles != 24/25".into())?;
    ensure(nested_squares::geometry::shoelace_area(&l1.inner) == q(ratio(1, 25)), || "depth 2 inner != 1/25".into())?;

    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut done = 0;
    while done < 25 {
        let t = random_sides(&mut rng);
        if t.is_isoceles() {
            continue;
        }
        all_zero(&verify_bhaskara(&t, 8).map_err(|e| e.to_string())?)?;
        done += 1;
    }
    let iso = build_bhaskara(&sides(2, 2), 6).map_err(|e| format!("isoceles: {e}"))?;
    ensure(iso.depth() == 1, || format!("isoceles depth {}", iso.depth()))?;
    all_zero(&verify_bhaskara(&sides(2, 2), 6).map_err(|e| e.to_string())?)
}

fn geometric_sum() -> Outcome {
    let c = verify_geometric_sum(&ratio(25, 49), 3).map_err(|e| e.to_string())?;
    exact_zero(&c)?;
    ensure(rational(&c.lhs) == Some(ratio(4251, 2401)), || format!("lhs {}", c.lhs))?;
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut done = 0;
    while done < 100 {
        let x = ratio(rng.gen_range(-10_000..=10_000), rng.gen_range(1..=10_000));
        if x.is_one() {
            continue;
        }
        exact_zero(&verify_geometric_sum(&x, rng.gen_range(1..=50)).map_err(|e| e.to_string())?)?;
        done += 1;
    }
    match verify_geometric_sum(&Rational::one(), 5) {
        Err(VerifyError::UnitRatio { .. }) => Ok(()),
        other => Err(format!("x = 1 gave {other:?}")),
    }
}

fn golden_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../core/tests/golden")
}

fn rendering() -> Outcome {
    for (stem, a, b, s) in [("fig1", 3, 4, "1"), ("fig4", 3, 7, "000000"), ("fig8", 3, 7, "010101")] {
        for format in [RenderFormat::Svg, RenderFormat::Tikz] {
            let opts = RenderOptions { format, ..RenderOptions::default() };
            let render = || {
                let fig: Figure = build_choupei(&sides(a, b), &s.parse().unwrap()).unwrap().into();
                nested_squares::render::render_figure(&fig, &opts).unwrap()
            };
            let (first, second) = (render(), render());
            let name = format!("{stem}.{}", format.extension());
            ensure(first == second, || format!("{name} differs between runs"))?;
            let golden = std::fs::read_to_string(golden_dir().join(&name)).map_err(|e| format!("{name}: {e}"))?;
            ensure(first == golden, || format!("{name} differs from golden"))?;
        }
    }
    Ok(())
}

fn run_cli(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_nested-squares"))
        .args(args)
        .env("NO_COLOR", "1")
        .output()
        .expect("spawn binary");
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8_lossy(&out.stdout).into_owned(),
        String::from_utf8_lossy(&out.stderr).into_owned(),
    )
}

fn cli() -> Outcome {
    let expect = |args: &[&str], code: i32| -> Result<(String, String), String> {
        let (got, out, err) = run_cli(args);
        ensure(got == code, || format!("{args:?} exited {got}, wanted {code}: {err}"))?;
        Ok((out, err))
    };
    expect(&["verify", "--family", "choupei", "--a", "3", "--b", "4", "--string", "10"], 0)?;
    let (_, err) = expect(&["verify", "--a", "0", "--b", "4", "--string", "1"], 2)?;
    ensure(err.contains("sides must be positive"), || format!("stderr: {err}"))?;
    let (out, _) = expect(&["verify", "--family", "proof2", "--a", "5", "--b", "12", "--depth", "4", "--json"], 0)?;
    ensure(out.trim_end().ends_with("\"all_pass\":true}"), || "json report not all_pass".into())?;
    expect(&["render", "--a", "3", "--b", "7", "--string", "000000"], 2)?;
    expect(&["render", "--a", "3", "--b", "7", "--string", "000000", "-o", "/nonexistent-dir/fig.svg"], 1)?;
    expect(&["sweep", "--cases", "0"], 2)?;
    expect(&["frobnicate"], 2)?;

    let sweep = ["sweep", "--cases", "100", "--seed", "42"];
    let start = Instant::now();
    let (first, _) = expect(&sweep, 0)?;
    within(start, Duration::from_secs(60))?;
    ensure(first.contains("100/100 pass"), || format!("sweep said: {first}"))?;
    let (second, _) = expect(&sweep, 0)?;
    ensure(first == second, || "sweep output not reproducible".into())
}

fn performance() -> Outcome {
    let start = Instant::now();
    let s: OrientationString = "1".repeat(30).parse().unwrap();
    exact_zero(&verify_recursive(&sides(3, 4), &s).map_err(|e| e.to_string())?)?;
    within(start, Duration::from_secs(5))
}

fn main() {
    let criteria: [Criterion; 11] = [
        ("proof #1 identity", proof1),
        ("telescoping identity and orientation independence", telescoping),
        ("closed forms", closed_forms),
        ("fractal #1 tail", fractal_tail),
        ("proof #2 and predicate suite", proof2),
        ("d-telescoping", d_telescoping),
        ("bhaskara family", bhaskara),
        ("geometric sum", geometric_sum),
        ("rendering determinism", rendering),
        ("cli contract", cli),
        ("performance guard", performance),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = check();
        let took = start.elapsed().as_secs_f64();
        match result {
            Ok(()) => println!("PASS  {:>2}  {name} ({took:.2}s)", i + 1),
            Err(e) => {
                failed += 1;
                println!("FAIL  {:>2}  {name} ({took:.2}s): {e}", i + 1);
            }
        }
    }
    println!("{}/{} criteria pass", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
