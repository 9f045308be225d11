use std::path::{Path, PathBuf};
use std::process::{Command, Output};
use std::sync::Arc;

use eulerint::complex::{grid_complex, torus};
use eulerint::{rat, CFun, DefFun, Rational};
use eulerint_cli::document::{Document, Integrand};
use proptest::prelude::*;

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../fixtures").join(name)
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_eulerint")).args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn first_line(out: &Output) -> String {
    stdout(out).lines().next().unwrap().to_string()
}

fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn interval_closed_and_riemann() {
    let f = fixture("interval-x.json");
    assert_eq!(first_line(&run(&["integrate", path_str(&f), "--measure", "floor", "--method", "closed"])), "1");
    let text = stdout(&run(&["integrate", path_str(&f), "--method", "riemann:1000"]));
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "1");
    assert_eq!(lines[2], "± 3/1000");
}

#[test]
fn all_methods_agree_on_cone() {
    let f = fixture("cone.json");
    for method in ["closed", "levelset", "morse", "betti0", "pushline"] {
        assert_eq!(first_line(&run(&["integrate", path_str(&f), "--method", method])), "5/2", "{method}");
    }
    for measure in ["ceil", "avg"] {
        for method in ["closed", "levelset", "morse", "pushline"] {
            let a = first_line(&run(&["integrate", path_str(&f), "--measure", measure, "--method", method]));
            let b = first_line(&run(&["integrate", path_str(&f), "--measure", measure]));
            assert_eq!(a, b, "{measure} {method}");
        }
    }
}

#[test]
fn square_width_and_centroid() {
    let f = fixture("square.json");
    let widths = stdout(&run(&["transform", path_str(&f), "--op", "width", "--xi", "1,0", "--xi", "1,1"]));
    assert_eq!(widths, "1\n2\n");
    assert_eq!(stdout(&run(&["transform", path_str(&f), "--op", "centroid", "--xi", "1,0"])), "1/2\n");
    assert_eq!(first_line(&run(&["integrate", path_str(&f), "--measure", "dchi"])), "1");
    assert_eq!(first_line(&run(&["integrate", path_str(&f), "--measure", "dchi", "--method", "levelset"])), "1");
}

#[test]
fn dual_on_circle_negates() {
    let f = fixture("circle-h.json");
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("dual.json");
    stdout(&run(&["transform", path_str(&f), "--op", "dual", "--out", path_str(&out)]));
    let doc = Document::from_json(&std::fs::read_to_string(&out).unwrap()).unwrap();
    let Integrand::Definable(d) = doc.parse().unwrap() else { panic!("definable expected") };
    let expected: Vec<Rational> = [3, 2, 1, 2].iter().map(|&x| rat(-x, 1)).collect();
    assert_eq!(d.vertex_values(), expected);
}

#[test]
fn link_on_torus_vanishes() {
    let k = Arc::new(torus(3, 3).unwrap());
    let h = DefFun::from_vertex_fn(k, |p| &p[0] + &p[1] / rat(7, 1) + &p[2] / rat(50, 1));
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("torus-h.json");
    std::fs::write(&input, Document::from_deffun(&h).to_json()).unwrap();
    let text = stdout(&run(&["transform", path_str(&input), "--op", "link"]));
    let Integrand::Definable(d) = Document::from_json(&text).unwrap().parse().unwrap() else { panic!() };
    assert!(d.all_data().iter().flatten().all(|x| *x == rat(0, 1)));
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, "{ not json").unwrap();
    assert_eq!(run(&["integrate", path_str(&bad)]).status.code(), Some(2));
    let zero_den = dir.path().join("zero.json");
    let text = std::fs::read_to_string(fixture("interval-x.json")).unwrap().replace("\"1\"]", "\"1/0\"]");
    std::fs::write(&zero_den, text).unwrap();
    assert_eq!(run(&["integrate", path_str(&zero_den)]).status.code(), Some(2));
    assert_eq!(run(&["integrate", "/nonexistent.json"]).status.code(), Some(2));
    assert_eq!(run(&["integrate", path_str(&fixture("interval-x.json")), "--method", "bogus"]).status.code(), Some(2));
    let interval = fixture("interval-x.json");
    assert_eq!(run(&["integrate", path_str(&interval), "--method", "betti0"]).status.code(), Some(3));
    assert_eq!(run(&["integrate", path_str(&interval), "--measure", "dchi"]).status.code(), Some(3));
    assert_eq!(run(&["transform", path_str(&interval), "--op", "width", "--xi", "1"]).status.code(), Some(3));
}

fn small_config(dir: &Path, p: &str) -> PathBuf {
    let text = std::fs::read_to_string(fixture("nine-disks.json"))
        .unwrap()
        .replace("[30, 30]", "[24, 24]")
        .replace("\"1/3\"", &format!("\"{p}\""));
    let path = dir.join(format!("config-{}.json", p.replace('/', "_")));
    std::fs::write(&path, text).unwrap();
    path
}

#[test]
fn sensor_clean_run_recovers_truth() {
    let dir = tempfile::tempdir().unwrap();
    let config = small_config(dir.path(), "0");
    let csv = dir.path().join("report.csv");
    let render = dir.path().join("render");
    stdout(&run(&[
        "sensor",
        path_str(&config),
        "--seeds",
        "2",
        "--out",
        path_str(&csv),
        "--render",
        path_str(&render),
    ]));
    let text = std::fs::read_to_string(&csv).unwrap();
    assert!(!text.contains('\r'));
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "seed,truth,raw_estimate,smoothed_estimate");
    for line in &lines[1..3] {
        let cols: Vec<&str> = line.split(',').collect();
        assert_eq!((cols[1], cols[2]), ("9", "9"));
    }
    assert!(lines[3].starts_with("median,9,9,"));
    let mut files: Vec<String> =
        std::fs::read_dir(&render).unwrap().map(|e| e.unwrap().file_name().into_string().unwrap()).collect();
    files.sort();
    assert_eq!(files, ["network.svg", "raw_0.pgm", "raw_1.pgm", "smoothed_0.pgm", "smoothed_1.pgm"]);
    let pgm = std::fs::read_to_string(render.join("raw_0.pgm")).unwrap();
    assert!(pgm.starts_with("P2\n"));
    assert!(pgm.contains("\n25 25\n255\n"));
}

#[test]
fn sensor_csv_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let config = small_config(dir.path(), "1/3");
    let a = dir.path().join("a.csv");
    let b = dir.path().join("b.csv");
    for out in [&a, &b] {
        stdout(&run(&["sensor", path_str(&config), "--seeds", "2", "--out", path_str(out)]));
    }
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
}

#[test]
fn sensor_config_errors() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, r#"{"x_range": ["0", "1"]}"#).unwrap();
    let csv = dir.path().join("r.csv");
    assert_eq!(run(&["sensor", path_str(&bad), "--out", path_str(&csv)]).status.code(), Some(2));
    let outside = small_config(dir.path(), "0");
    let text = std::fs::read_to_string(&outside).unwrap().replace("\"10\", \"10\"", "\"12\", \"12\"");
    std::fs::write(&outside, text).unwrap();
    assert_eq!(run(&["sensor", path_str(&outside), "--seeds", "1", "--out", path_str(&csv)]).status.code(), Some(3));
}

fn random_values(seed: u64, n: usize) -> Vec<Rational> {
    use rand::{Rng, SeedableRng};
    let mut r = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    (0..n).map(|_| rat(r.gen_range(-9..=9), r.gen_range(1..=4))).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn documents_round_trip(seed in any::<u64>(), nx in 1usize..4, ny in 1usize..4, kind in 0u8..3) {
        let k = Arc::new(grid_complex(nx, ny, (rat(0, 1), rat(nx as i64, 1)), (rat(0, 1), rat(ny as i64, 2))).unwrap());
        let h = match kind {
            0 => Integrand::Definable(DefFun::from_vertex_values(k.clone(), random_values(seed, k.num_vertices())).unwrap()),
            1 => {
                let vals = random_values(seed, k.num_cells()).iter().map(|q| q.numer().try_into().unwrap()).collect();
                Integrand::Constructible(CFun::new(k.clone(), vals).unwrap())
            }
            _ => {
                let vals = random_values(seed, k.num_cells());
                let data = k.cells().iter().zip(vals).map(|(c, v)| vec![v; c.dim() + 1]).collect();
                Integrand::Definable(DefFun::new(k.clone(), data).unwrap())
            }
        };
        let doc = Document::from_integrand(&h);
        let reparsed = Document::from_json(&doc.to_json()).unwrap();
        prop_assert_eq!(&reparsed, &doc);
        let back = reparsed.parse().unwrap();
        prop_assert_eq!(back.to_deffun(), h.to_deffun());
        prop_assert_eq!(Document::from_integrand(&back), doc);
    }
}
