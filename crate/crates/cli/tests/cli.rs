//! End-to-end command behavior: output shapes, exit codes, diagnostics,
//! and the flags that change scoring.

mod common;

use common::*;

fn parse_json(text: &str) -> serde_json::Value {
    serde_json::from_str(text).expect("valid JSON")
}

#[test]
fn score_prints_breakdown_with_exact_fields() {
    let output = run(&["score", "--reference", "the", "--candidate", "the the"]);
    assert_eq!(exit_code(&output), 0);
    let doc = parse_json(&stdout(&output));
    assert_eq!(doc["branch"], "cosine");
    assert_eq!(doc["n"], 3);
    assert_eq!(doc["m"], 7);
    assert_eq!(doc["final"].as_f64().unwrap(), 0.2636);
    assert!((doc["final_exact"].as_f64().unwrap() - 0.2635971381157267).abs() < 1e-12);
}

#[test]
fn score_identity_is_one() {
    let output = run(&["score", "--reference", "abc", "--candidate", "abc"]);
    assert_eq!(exit_code(&output), 0);
    let doc = parse_json(&stdout(&output));
    assert_eq!(doc["final"].as_f64().unwrap(), 1.0);
}

#[test]
fn score_empty_reference_exits_2() {
    let output = run(&["score", "--reference", "", "--candidate", "x"]);
    assert_eq!(exit_code(&output), 2);
    assert!(stderr(&output).contains("empty"));
}

#[test]
fn score_csv_format() {
    let output = run(&[
        "score",
        "--reference",
        "game on",
        "--candidate",
        "gama on",
        "--format",
        "csv",
    ]);
    assert_eq!(exit_code(&output), 0);
    let text = stdout(&output);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "precision,cosine,brevity,branch,final,n,m");
    // Shared token "on" out of {game, on} x {gama, on}: cosine 0.5.
    assert_eq!(lines[1], "0.8571,0.5000,1.0000,precision,0.8571,7,7");
}

#[test]
fn no_case_fold_exposes_case_mismatches() {
    let folded = run(&["score", "--reference", "THE", "--candidate", "the"]);
    assert_eq!(parse_json(&stdout(&folded))["final"].as_f64().unwrap(), 1.0);

    let unfolded = run(&[
        "score",
        "--reference",
        "THE",
        "--candidate",
        "the",
        "--no-case-fold",
    ]);
    let doc = parse_json(&stdout(&unfolded));
    assert!(doc["final"].as_f64().unwrap() < 1.0);
}

#[test]
fn out_of_range_threshold_exits_2() {
    for bad in ["1.5", "0", "1", "-0.2"] {
        let output = run(&[
            "score",
            "--reference",
            "a",
            "--candidate",
            "a",
            "--threshold",
            bad,
        ]);
        assert_eq!(exit_code(&output), 2, "threshold {bad}");
    }
}

#[test]
fn unknown_flag_exits_2() {
    let output = run(&["score", "--reference", "a", "--candidate", "a", "--bogus"]);
    assert_eq!(exit_code(&output), 2);
}

#[test]
fn score_output_is_deterministic() {
    let first = run(&[
        "score",
        "--reference",
        "sale ends sunday!",
        "--candidate",
        "sale end sunday",
    ]);
    let second = run(&[
        "score",
        "--reference",
        "sale ends sunday!",
        "--candidate",
        "sale end sunday",
    ]);
    assert_eq!(first.stdout, second.stdout);
}

#[test]
fn batch_threshold_round_trips_into_config() {
    let dir = tempfile::tempdir().unwrap();
    let references = dir.path().join("references.csv");
    let transcripts = dir.path().join("transcripts.csv");
    let report = dir.path().join("report.json");
    write_file(
        &references,
        "reference_id,reference_text,category\nk3,the,known\n",
    );
    write_file(
        &transcripts,
        "reference_id,image_index,repetition_index,text\nk3,1,1,the\n",
    );

    let output = run(&[
        "batch",
        "--references",
        references.to_str().unwrap(),
        "--transcripts",
        transcripts.to_str().unwrap(),
        "--out",
        report.to_str().unwrap(),
        "--threshold",
        "0.75",
        "--no-case-fold",
    ]);
    assert_eq!(exit_code(&output), 0);
    let doc = parse_json(&std::fs::read_to_string(&report).unwrap());
    assert_eq!(doc["config"]["threshold"].as_f64().unwrap(), 0.75);
    assert!(!doc["config"]["case_fold"].as_bool().unwrap());
}

#[test]
fn batch_empty_transcripts_warns_and_exits_0() {
    let dir = tempfile::tempdir().unwrap();
    let references = dir.path().join("references.csv");
    let transcripts = dir.path().join("transcripts.csv");
    let report = dir.path().join("report.json");
    write_file(
        &references,
        "reference_id,reference_text,category\nk3,the,known\n",
    );
    write_file(
        &transcripts,
        "reference_id,image_index,repetition_index,text\n",
    );

    let output = run(&[
        "batch",
        "--references",
        references.to_str().unwrap(),
        "--transcripts",
        transcripts.to_str().unwrap(),
        "--out",
        report.to_str().unwrap(),
    ]);
    assert_eq!(exit_code(&output), 0);
    assert!(stderr(&output).contains("no transcripts for reference 'k3'"));
    let doc = parse_json(&std::fs::read_to_string(&report).unwrap());
    assert_eq!(doc["references"].as_array().unwrap().len(), 0);
}

#[test]
fn batch_unknown_reference_id_exits_2_naming_the_row() {
    let dir = tempfile::tempdir().unwrap();
    let references = dir.path().join("references.csv");
    let transcripts = dir.path().join("transcripts.csv");
    write_file(
        &references,
        "reference_id,reference_text,category\nk3,the,known\n",
    );
    write_file(
        &transcripts,
        "reference_id,image_index,repetition_index,text\nk3,1,1,the\nzz,1,1,the\n",
    );

    let output = run(&[
        "batch",
        "--references",
        references.to_str().unwrap(),
        "--transcripts",
        transcripts.to_str().unwrap(),
        "--out",
        dir.path().join("report.json").to_str().unwrap(),
    ]);
    assert_eq!(exit_code(&output), 2);
    let err = stderr(&output);
    assert!(err.contains("row 3") && err.contains("zz"), "stderr: {err}");
}

#[test]
fn batch_prints_one_summary_line_per_reference() {
    let dir = tempfile::tempdir().unwrap();
    let references = dir.path().join("references.csv");
    let transcripts = dir.path().join("transcripts.csv");
    write_file(
        &references,
        "reference_id,reference_text,category\nk3,the,known\nu3,hua,unknown\n",
    );
    write_file(
        &transcripts,
        "reference_id,image_index,repetition_index,text\nk3,1,1,the\nu3,1,1,hua\n",
    );

    let output = run(&[
        "batch",
        "--references",
        references.to_str().unwrap(),
        "--transcripts",
        transcripts.to_str().unwrap(),
        "--out",
        dir.path().join("report.json").to_str().unwrap(),
    ]);
    assert_eq!(exit_code(&output), 0);
    let out = stdout(&output);
    let summary_lines: Vec<&str> = out.lines().filter(|l| l.contains("abhinaw=")).collect();
    assert_eq!(summary_lines.len(), 2);
    assert!(summary_lines[0].starts_with("k3"));
    assert!(summary_lines[1].starts_with("u3"));
}

#[test]
fn batch_plot_emits_one_marker_per_reference() {
    let dir = tempfile::tempdir().unwrap();
    let references = dir.path().join("references.csv");
    let transcripts = dir.path().join("transcripts.csv");
    let plot = dir.path().join("plot.svg");
    write_file(
        &references,
        "reference_id,reference_text,category\nk1,at,known\nk2,the,known\nk3,line,known\n",
    );
    write_file(
        &transcripts,
        "reference_id,image_index,repetition_index,text\nk1,1,1,at\nk2,1,1,the\nk3,1,1,line\n",
    );

    let output = run(&[
        "batch",
        "--references",
        references.to_str().unwrap(),
        "--transcripts",
        transcripts.to_str().unwrap(),
        "--out",
        dir.path().join("report.json").to_str().unwrap(),
        "--plot",
        plot.to_str().unwrap(),
    ]);
    assert_eq!(exit_code(&output), 0);
    let svg = std::fs::read_to_string(&plot).unwrap();
    assert_eq!(svg.matches("<circle ").count(), 3);
    assert_eq!(svg.matches("<line ").count(), 0);
    assert!(svg.contains("viewBox=\"0 0 640 480\""));
}

#[test]
fn regress_identical_files_give_identity_fit() {
    let dir = tempfile::tempdir().unwrap();
    let scores = dir.path().join("scores.csv");
    write_file(
        &scores,
        "reference_id,category,score\nk1,known,0.2\nk2,known,0.5\nk3,known,0.9\n",
    );
    let out = dir.path().join("out.json");

    let output = run(&[
        "regress",
        "--x",
        scores.to_str().unwrap(),
        "--y",
        scores.to_str().unwrap(),
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(exit_code(&output), 0);
    let doc = parse_json(&std::fs::read_to_string(&out).unwrap());
    let fit = &doc["regressions"]["known"];
    assert!((fit["slope_exact"].as_f64().unwrap() - 1.0).abs() < 1e-12);
    assert!(fit["intercept_exact"].as_f64().unwrap().abs() < 1e-12);
    assert!((fit["pearson_r_exact"].as_f64().unwrap() - 1.0).abs() < 1e-12);
}

#[test]
fn regress_single_shared_point_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    let x = dir.path().join("x.csv");
    let y = dir.path().join("y.csv");
    write_file(
        &x,
        "reference_id,category,score\nk1,known,0.2\nk2,known,0.5\n",
    );
    write_file(
        &y,
        "reference_id,category,score\nk1,known,0.3\nother,known,0.5\n",
    );

    let output = run(&[
        "regress",
        "--x",
        x.to_str().unwrap(),
        "--y",
        y.to_str().unwrap(),
        "--out",
        dir.path().join("out.json").to_str().unwrap(),
    ]);
    assert_eq!(exit_code(&output), 2);
    assert!(stderr(&output).to_lowercase().contains("insufficient"));
}

#[test]
fn regress_zero_variance_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    let x = dir.path().join("x.csv");
    let y = dir.path().join("y.csv");
    write_file(
        &x,
        "reference_id,category,score\nk1,known,0.5\nk2,known,0.5\n",
    );
    write_file(
        &y,
        "reference_id,category,score\nk1,known,0.3\nk2,known,0.7\n",
    );

    let output = run(&[
        "regress",
        "--x",
        x.to_str().unwrap(),
        "--y",
        y.to_str().unwrap(),
        "--out",
        dir.path().join("out.json").to_str().unwrap(),
    ]);
    assert_eq!(exit_code(&output), 2);
    assert!(stderr(&output).contains("zero variance"));
}

#[test]
fn regress_svg_has_one_fit_line_and_one_marker_per_point() {
    let dir = tempfile::tempdir().unwrap();
    let x = dir.path().join("x.csv");
    let y = dir.path().join("y.csv");
    let mut x_csv = String::from("reference_id,category,score\n");
    let mut y_csv = String::from("reference_id,category,score\n");
    for i in 1..=10 {
        x_csv.push_str(&format!("k{i},known,0.{i}\n"));
        y_csv.push_str(&format!("k{i},known,0.{}\n", 11 - i));
        x_csv.push_str(&format!("u{i},unknown,0.{}5\n", i));
        y_csv.push_str(&format!("u{i},unknown,0.{i}\n"));
    }
    write_file(&x, &x_csv);
    write_file(&y, &y_csv);

    let svg_base = dir.path().join("plot.svg");
    let output = run(&[
        "regress",
        "--x",
        x.to_str().unwrap(),
        "--y",
        y.to_str().unwrap(),
        "--out",
        dir.path().join("out.json").to_str().unwrap(),
        "--svg",
        svg_base.to_str().unwrap(),
    ]);
    assert_eq!(exit_code(&output), 0, "stderr: {}", stderr(&output));

    for category in ["known", "unknown"] {
        let path = dir.path().join(format!("plot.{category}.svg"));
        let svg = std::fs::read_to_string(&path).unwrap();
        assert_eq!(svg.matches("<line ").count(), 1, "{category} fit line");
        assert_eq!(svg.matches("<circle ").count(), 10, "{category} markers");
    }
}

#[test]
fn ocr_fetch_missing_credential_exits_3() {
    let dir = tempfile::tempdir().unwrap();
    let images = dir.path().join("images");
    std::fs::create_dir(&images).unwrap();
    std::fs::write(images.join("a.png"), [1u8]).unwrap();

    let output = abhinaw()
        .args([
            "ocr-fetch",
            "--images-dir",
            images.to_str().unwrap(),
            "--reference-id",
            "k3",
            "--backend",
            "http",
            "--endpoint",
            "http://127.0.0.1:1/ocr",
            "--out",
            dir.path().join("t.csv").to_str().unwrap(),
        ])
        .env_remove("ABHINAW_OCR_KEY")
        .output()
        .unwrap();
    assert_eq!(exit_code(&output), 3);
    assert!(stderr(&output).contains("ABHINAW_OCR_KEY"));
}

#[test]
fn ocr_fetch_unreachable_backend_exits_3() {
    let dir = tempfile::tempdir().unwrap();
    let images = dir.path().join("images");
    std::fs::create_dir(&images).unwrap();
    std::fs::write(images.join("a.png"), [1u8]).unwrap();

    let output = abhinaw()
        .args([
            "ocr-fetch",
            "--images-dir",
            images.to_str().unwrap(),
            "--reference-id",
            "k3",
            "--backend",
            "http",
            "--endpoint",
            "http://127.0.0.1:1/ocr",
            "--out",
            dir.path().join("t.csv").to_str().unwrap(),
        ])
        .env("ABHINAW_OCR_KEY", "test-key")
        .output()
        .unwrap();
    assert_eq!(exit_code(&output), 3);
    assert!(stderr(&output).contains("unavailable"));
}

#[test]
fn ocr_fetch_missing_script_exits_3() {
    let dir = tempfile::tempdir().unwrap();
    let images = dir.path().join("images");
    std::fs::create_dir(&images).unwrap();
    std::fs::write(images.join("a.png"), [1u8]).unwrap();

    let output = run(&[
        "ocr-fetch",
        "--images-dir",
        images.to_str().unwrap(),
        "--reference-id",
        "k3",
        "--backend",
        "fixture",
        "--script",
        dir.path().join("missing.json").to_str().unwrap(),
        "--out",
        dir.path().join("t.csv").to_str().unwrap(),
    ]);
    assert_eq!(exit_code(&output), 3);
}

#[test]
fn ocr_fetch_zero_repetitions_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    let images = dir.path().join("images");
    std::fs::create_dir(&images).unwrap();
    std::fs::write(images.join("a.png"), [1u8]).unwrap();
    let script = dir.path().join("script.json");
    write_file(&script, "{\"a.png\": \"the\"}");

    let output = run(&[
        "ocr-fetch",
        "--images-dir",
        images.to_str().unwrap(),
        "--reference-id",
        "k3",
        "--repetitions",
        "0",
        "--backend",
        "fixture",
        "--script",
        script.to_str().unwrap(),
        "--out",
        dir.path().join("t.csv").to_str().unwrap(),
    ]);
    assert_eq!(exit_code(&output), 2);
}

#[test]
fn ocr_fetch_scripted_image_failure_reports_and_continues() {
    let dir = tempfile::tempdir().unwrap();
    let images = dir.path().join("images");
    std::fs::create_dir(&images).unwrap();
    let mut script_entries = Vec::new();
    for i in 1..=10 {
        std::fs::write(images.join(format!("img_{i:02}.png")), [i as u8]).unwrap();
        if i == 3 {
            script_entries.push(format!("\"img_{i:02}.png\": null"));
        } else {
            script_entries.push(format!("\"img_{i:02}.png\": \"the\""));
        }
    }
    let script = dir.path().join("script.json");
    write_file(&script, &format!("{{{}}}", script_entries.join(",")));

    let out_csv = dir.path().join("t.csv");
    let output = run(&[
        "ocr-fetch",
        "--images-dir",
        images.to_str().unwrap(),
        "--reference-id",
        "k3",
        "--repetitions",
        "10",
        "--backend",
        "fixture",
        "--script",
        script.to_str().unwrap(),
        "--retry-backoff-ms",
        "0",
        "--out",
        out_csv.to_str().unwrap(),
    ]);
    assert_eq!(exit_code(&output), 0);

    let err = stderr(&output);
    assert_eq!(err.lines().filter(|l| l.starts_with("failed:")).count(), 10);
    assert!(err.contains("10 of 100 transcriptions failed"));

    let records = abhinaw_core::transcripts::load_transcripts(&out_csv).unwrap();
    assert_eq!(records.len(), 90);
    assert!(records.iter().all(|r| r.image_index != 3));
}

#[test]
fn ocr_fetch_respects_jobs_flag() {
    let dir = tempfile::tempdir().unwrap();
    let images = dir.path().join("images");
    std::fs::create_dir(&images).unwrap();
    for i in 1..=4 {
        std::fs::write(images.join(format!("img_{i}.png")), [i as u8]).unwrap();
    }
    let script = dir.path().join("script.json");
    write_file(
        &script,
        "{\"img_1.png\": \"a\", \"img_2.png\": \"b\", \"img_3.png\": \"c\", \"img_4.png\": \"d\"}",
    );

    for jobs in ["1", "8"] {
        let out_csv = dir.path().join(format!("t{jobs}.csv"));
        let output = run(&[
            "ocr-fetch",
            "--images-dir",
            images.to_str().unwrap(),
            "--reference-id",
            "r",
            "--repetitions",
            "5",
            "--backend",
            "fixture",
            "--script",
            script.to_str().unwrap(),
            "--jobs",
            jobs,
            "--out",
            out_csv.to_str().unwrap(),
        ]);
        assert_eq!(exit_code(&output), 0);
    }
    // Parallelism is unobservable in the output.
    assert_eq!(
        std::fs::read(dir.path().join("t1.csv")).unwrap(),
        std::fs::read(dir.path().join("t8.csv")).unwrap()
    );
}
