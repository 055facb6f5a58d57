use std::fs;
use std::path::{Path, PathBuf};

use tourlen::bench::{
    audit_tours, evaluate_corpus, run_evaluate, write_fig1_curves, Formula, OptSource, RunConfig,
};
use tourlen::estimators::relative_error;
use tourlen::metric::build_instance;
use tourlen::tsplib::{parse_instance, parse_tour};
use tourlen::BenchError;

fn data_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../data")
}

fn config(out: &Path) -> RunConfig {
    let mut c = RunConfig::new(data_dir().join("tsplib"), out);
    c.tour_dir = Some(data_dir().join("tsplib"));
    c.reported_values_path = Some(data_dir().join("reported_values.csv"));
    c
}

#[test]
fn pcb442_tour_matches_rounded_optimum() {
    // TSPLIB's EUC_2D rounds every edge to the nearest integer
    let dir = data_dir().join("tsplib");
    let raw = parse_instance(fs::File::open(dir.join("pcb442.tsp")).unwrap()).unwrap();
    let tour = parse_tour(fs::File::open(dir.join("pcb442.opt.tour")).unwrap(), 442).unwrap();
    let xy: Vec<(f64, f64)> = raw.node_coords.iter().map(|c| (c.x, c.y)).collect();
    let mut total = 0.0;
    for w in 0..tour.sequence.len() {
        let a = xy[tour.sequence[w] - 1];
        let b = xy[tour.sequence[(w + 1) % tour.sequence.len()] - 1];
        total += (((a.0 - b.0).powi(2) + (a.1 - b.1).powi(2)).sqrt() + 0.5).floor();
    }
    assert_eq!(total, 50778.0);
}

#[test]
fn corpus_run_uses_best_optimum_source() {
    let out = tempfile::tempdir().unwrap();
    let run = evaluate_corpus(&config(out.path())).unwrap();
    assert!(run.skipped.is_empty(), "{:?}", run.skipped);
    let names: Vec<&str> = run.results.iter().map(|r| r.name.as_str()).collect();
    assert_eq!(names, ["att48", "att532", "berlin52", "eil51", "pcb442", "pr2392"]);

    let get = |name: &str| run.results.iter().find(|r| r.name == name).unwrap();
    assert_eq!(get("eil51").opt, Some((OptSource::Reported, 426.0)));
    assert_eq!(get("eil51").estimates[&Formula::Hk], 422.4);
    let (source, length) = get("pcb442").opt.unwrap();
    assert_eq!(source, OptSource::PublishedTour);
    assert!((length - 50778.0).abs() / 50778.0 < 0.01);
    assert!(!get("pcb442").estimates.contains_key(&Formula::Hk));

    for r in &run.results {
        let (_, opt) = r.opt.unwrap();
        for (f, &est) in &r.estimates {
            assert_eq!(r.epsilon[f], relative_error(est, opt).unwrap());
        }
        assert!(r.epsilon[&Formula::O1] >= 0.0, "{}", r.name);
        assert!(r.epsilon[&Formula::TPlusW0] <= 0.0, "{}", r.name);
        assert!(r.epsilon[&Formula::TRatio] <= 0.0, "{}", r.name);
    }
}

#[test]
fn att_lengths_are_reported_scaled() {
    let out = tempfile::tempdir().unwrap();
    let run = evaluate_corpus(&config(out.path())).unwrap();
    let att = run.results.iter().find(|r| r.name == "att48").unwrap();
    let dir = data_dir().join("tsplib");
    let raw = parse_instance(fs::File::open(dir.join("att48.tsp")).unwrap()).unwrap();
    let inst = build_instance(&raw).unwrap();
    let mut w1: f64 = 0.0;
    for i in 0..inst.len() {
        for j in 0..i {
            let (a, b) = (inst.point(i), inst.point(j));
            w1 = w1.max(((a[0] - b[0]).powi(2) + (a[1] - b[1]).powi(2)).sqrt());
        }
    }
    assert!((att.w1 - w1 / 10f64.sqrt()).abs() < 1e-9 * w1);
}

#[test]
fn tour_beats_reported_and_exact_beats_tour() {
    let dir = tempfile::tempdir().unwrap();
    let src = data_dir().join("tsplib");
    fs::copy(src.join("eil51.tsp"), dir.path().join("eil51.tsp")).unwrap();
    let ids: Vec<String> = (1..=51).map(|i| i.to_string()).collect();
    fs::write(
        dir.path().join("eil51.tour"),
        format!("NAME : eil51.tour\nTYPE : TOUR\nDIMENSION : 51\nTOUR_SECTION\n{}\n-1\nEOF\n", ids.join("\n")),
    )
    .unwrap();
    fs::write(
        dir.path().join("tiny.tsp"),
        "NAME : tiny\nTYPE : TSP\nDIMENSION : 4\nEDGE_WEIGHT_TYPE : EUC_2D\nNODE_COORD_SECTION\n1 0 0\n2 3 0\n3 3 4\n4 0 4\nEOF\n",
    )
    .unwrap();
    fs::write(
        dir.path().join("tiny.tour"),
        "NAME : tiny.tour\nTYPE : TOUR\nDIMENSION : 4\nTOUR_SECTION\n1 3 2 4 -1\nEOF\n",
    )
    .unwrap();
    fs::write(dir.path().join("broken.tsp"), "NAME : broken\nDIMENSION : 3\n").unwrap();

    let mut c = RunConfig::new(dir.path(), dir.path().join("out"));
    c.tour_dir = Some(dir.path().to_path_buf());
    c.reported_values_path = Some(data_dir().join("reported_values.csv"));
    let run = evaluate_corpus(&c).unwrap();
    assert_eq!(run.skipped.len(), 1);
    assert!(run.skipped[0].path.ends_with("broken.tsp"));

    let eil = run.results.iter().find(|r| r.name == "eil51").unwrap();
    assert_eq!(eil.opt.unwrap().0, OptSource::PublishedTour);
    let tiny = run.results.iter().find(|r| r.name == "tiny").unwrap();
    assert_eq!(tiny.opt, Some((OptSource::Exact, 14.0)));
}

#[test]
fn directory_errors_are_typed() {
    let empty = tempfile::tempdir().unwrap();
    let c = RunConfig::new(empty.path(), empty.path());
    assert!(matches!(evaluate_corpus(&c), Err(BenchError::NoInstances(_))));
    let c = RunConfig::new(empty.path().join("missing"), empty.path());
    assert!(matches!(evaluate_corpus(&c), Err(BenchError::UnreadableDir { .. })));
}

fn read_all(dir: &Path) -> Vec<(String, Vec<u8>)> {
    let mut files: Vec<_> = fs::read_dir(dir)
        .unwrap()
        .map(|e| {
            let p = e.unwrap().path();
            (p.file_name().unwrap().to_string_lossy().into_owned(), fs::read(&p).unwrap())
        })
        .collect();
    files.sort();
    files
}

#[test]
fn evaluate_outputs_are_deterministic() {
    let a = tempfile::tempdir().unwrap();
    let b = tempfile::tempdir().unwrap();
    run_evaluate(&config(a.path())).unwrap();
    run_evaluate(&config(b.path())).unwrap();
    let (fa, fb) = (read_all(a.path()), read_all(b.path()));
    assert_eq!(fa, fb);
    let names: Vec<&str> = fa.iter().map(|(n, _)| n.as_str()).collect();
    assert!(names.contains(&"table1.csv"));
    assert!(names.contains(&"table1.txt"));
    assert!(names.contains(&"hist_HK.csv"));
    assert!(names.contains(&"instances.csv"));

    let table = String::from_utf8(fa.iter().find(|(n, _)| n == "table1.csv").unwrap().1.clone()).unwrap();
    let rows: Vec<&str> = table.lines().map(|l| l.split(',').next().unwrap()).collect();
    assert_eq!(
        rows,
        ["formula", "O1", "O2", "Ot1", "Ot2", "Otc1", "Otc2", "HK", "T_plus_w0", "T_ratio"]
    );
}

#[test]
fn instances_csv_epsilons_recompute() {
    let out = tempfile::tempdir().unwrap();
    run_evaluate(&config(out.path())).unwrap();
    let mut reader = csv::Reader::from_path(out.path().join("instances.csv")).unwrap();
    let header = reader.headers().unwrap().clone();
    let opt_col = header.iter().position(|h| h == "opt").unwrap();
    let mut checked = 0;
    for row in reader.records() {
        let row = row.unwrap();
        let opt: f64 = row[opt_col].parse().unwrap();
        for f in Formula::ALL {
            let est_col = header.iter().position(|h| h == format!("est_{f}")).unwrap();
            let eps_col = header.iter().position(|h| h == format!("eps_{f}")).unwrap();
            if row[est_col].is_empty() {
                assert!(row[eps_col].is_empty());
                continue;
            }
            let est: f64 = row[est_col].parse().unwrap();
            let eps: f64 = row[eps_col].parse().unwrap();
            assert_eq!(eps, relative_error(est, opt).unwrap());
            checked += 1;
        }
    }
    assert!(checked >= 6 * 8);
}

#[test]
fn audit_reports_available_tours() {
    let out = tempfile::tempdir().unwrap();
    let entries = audit_tours(&config(out.path())).unwrap();
    assert_eq!(entries.len(), 1);
    let e = &entries[0];
    assert_eq!((e.instance.as_str(), e.n), ("pcb442", Some(442)));
    assert!(e.diagnostic.is_none());
    assert!(e.classification.is_some());
    assert_eq!(e.reported_opt, Some(50778.0));
}

#[test]
fn audit_flags_dimension_mismatch_per_item() {
    let dir = tempfile::tempdir().unwrap();
    fs::copy(data_dir().join("tsplib/eil51.tsp"), dir.path().join("eil51.tsp")).unwrap();
    fs::write(
        dir.path().join("eil51.opt.tour"),
        "NAME : eil51.opt.tour\nTYPE : TOUR\nDIMENSION : 52\nTOUR_SECTION\n1\n-1\nEOF\n",
    )
    .unwrap();
    fs::write(dir.path().join("ghost.tour"), "TOUR_SECTION\n1 2 3\n-1\n").unwrap();
    let c = RunConfig::new(dir.path(), dir.path());
    let entries = audit_tours(&c).unwrap();
    assert_eq!(entries.len(), 2);
    assert!(entries.iter().all(|e| e.computed.is_none() && e.diagnostic.is_some()));
}

#[test]
fn fig1_csv_shape() {
    let mut buf = Vec::new();
    write_fig1_curves(100, &mut buf).unwrap();
    let text = String::from_utf8(buf).unwrap();
    assert_eq!(text.lines().count(), 1 + 4 * 100);
    assert_eq!(text.lines().nth(1).unwrap(), "1,k=log2(d),0.5");
}
