//! `scr` — exact-integer bookkeeping for space-curve resolutions from the
//! command line: expected Betti tables, the sequence families with their
//! starred variants, and the verification sweeps over the embedded
//! transcription of the reference tables and case recipes.
//!
//! Exit codes: 0 all checks pass, 1 diffs or flags found, 2 usage error.

mod report;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use scr_core::cohom::quadric_printed_diff;
use scr_core::corpus::Corpus;
use scr_core::horace::Verdict;
use scr_core::resolution::{defects, expected_betti, generator_counts, Curve};
use scr_core::seq::{
    schedule_start, schedule_step, solve_family, Family, ScheduleRecord, SeqRecord,
};
use scr_core::sweeps::run_lemma_sweeps;

use report::{align, Emitted, Format, Status};

#[derive(Parser)]
#[command(
    name = "scr",
    version,
    about = "Exact bookkeeping for minimal free resolutions of space curves"
)]
struct Cli {
    /// Emit the report as JSON.
    #[arg(long, global = true)]
    json: bool,
    /// Emit the report as CSV.
    #[arg(long, global = true, conflicts_with = "json")]
    csv: bool,
    /// Load the table/recipe corpus from a file instead of the embedded
    /// copy (env: SCR_CORPUS).
    #[arg(long, global = true, env = "SCR_CORPUS")]
    corpus: Option<std::path::PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Critical value, generator counts, defects, and the expected Betti
    /// table of a nonspecial curve class (d, g).
    Betti { d: i64, g: i64 },
    /// Rows of one sequence family over an index range.
    Seq {
        family: SeqFamilyArg,
        from: i64,
        to: i64,
    },
    /// Cross-check computed values against the embedded transcription.
    Verify {
        what: VerifyWhat,
        /// Upper sweep bound for the window inequalities.
        #[arg(long, default_value_t = 10_000)]
        max_m: i64,
        /// Restrict `verify steps` to one recipe id.
        #[arg(long)]
        case: Option<String>,
    },
    /// Degree/genus schedule records from a start index.
    Schedule {
        s: i64,
        #[arg(default_value_t = 5)]
        steps: u32,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum VerifyWhat {
    Tables,
    Lemmas,
    Steps,
    Constants,
}

#[derive(Clone, Copy, ValueEnum)]
enum SeqFamilyArg {
    /// d''(m), r(m)
    Dpp,
    /// delta''(m), rho(m)
    DeltaPp,
    /// d(m), a(m), b(m) and stars
    Omega,
    /// d'(m), a'(m), b'(m) and stars
    Tpi,
    /// delta(m), alpha(m), beta(m) and stars
    DeltaOmega,
    /// delta'(m), alpha'(m), beta'(m) and stars
    DeltaTpi,
    /// delta(m)* and alpha(m)* only
    DeltaStar,
    /// delta'(m)* and alpha'(m)* only
    DeltaTpiStar,
    /// d(m)* and a(m)* only
    DStar,
    /// d'(m)* and a'(m)* only
    DTpiStar,
}

impl SeqFamilyArg {
    fn family(self) -> Family {
        match self {
            SeqFamilyArg::Dpp => Family::Dpp,
            SeqFamilyArg::DeltaPp => Family::DeltaPp,
            SeqFamilyArg::Omega | SeqFamilyArg::DStar => Family::OmegaBase,
            SeqFamilyArg::Tpi | SeqFamilyArg::DTpiStar => Family::TpiBase,
            SeqFamilyArg::DeltaOmega | SeqFamilyArg::DeltaStar => Family::DeltaOmega,
            SeqFamilyArg::DeltaTpi | SeqFamilyArg::DeltaTpiStar => Family::DeltaTpi,
        }
    }

    fn stars_only(self) -> bool {
        matches!(
            self,
            SeqFamilyArg::DeltaStar
                | SeqFamilyArg::DeltaTpiStar
                | SeqFamilyArg::DStar
                | SeqFamilyArg::DTpiStar
        )
    }

    fn min_index(self) -> i64 {
        match self {
            SeqFamilyArg::Dpp => 0,
            _ => 2,
        }
    }
}

fn usage_error(msg: &str) -> ! {
    eprintln!("error: {msg}");
    std::process::exit(Status::Error.exit_code());
}

fn load_corpus(path: &Option<std::path::PathBuf>) -> Corpus {
    let parsed = match path {
        Some(p) => {
            let text = std::fs::read_to_string(p)
                .unwrap_or_else(|e| usage_error(&format!("cannot read corpus {}: {e}", p.display())));
            Corpus::parse(&text)
        }
        None => Corpus::embedded(),
    };
    parsed.unwrap_or_else(|e| usage_error(&format!("corpus rejected: {e}")))
}

fn main() {
    let cli = Cli::parse();
    let format = if cli.json {
        Format::Json
    } else if cli.csv {
        Format::Csv
    } else {
        Format::Text
    };
    let emitted = match cli.command {
        Command::Betti { d, g } => cmd_betti(d, g),
        Command::Seq { family, from, to } => cmd_seq(family, from, to),
        Command::Verify { what, max_m, case } => {
            let corpus = load_corpus(&cli.corpus);
            match what {
                VerifyWhat::Tables => cmd_verify_tables(&corpus),
                VerifyWhat::Lemmas => cmd_verify_lemmas(max_m),
                VerifyWhat::Steps => cmd_verify_steps(&corpus, case.as_deref()),
                VerifyWhat::Constants => cmd_verify_constants(&corpus),
            }
        }
        Command::Schedule { s, steps } => cmd_schedule(s, steps),
    };
    match emitted.print(format) {
        Ok(()) => {}
        // a consumer that stopped reading is not a verification failure
        Err(e) if e.kind() == std::io::ErrorKind::BrokenPipe => {}
        Err(e) => {
            eprintln!("error: {e}");
            std::process::exit(Status::Error.exit_code());
        }
    }
    std::process::exit(emitted.status.exit_code());
}

#[derive(Serialize)]
struct BettiPayload {
    d: i64,
    g: i64,
    critical_value: i64,
    generators_deg_m: i64,
    generators_deg_m1: i64,
    defect_omega: i64,
    defect_tpi: i64,
    numerator: Vec<i64>,
    betti: Vec<(u8, i64, i64)>,
}

fn cmd_betti(d: i64, g: i64) -> Emitted {
    let curve = Curve::new(d, g).unwrap_or_else(|e| usage_error(&e.to_string()));
    let table = expected_betti(&curve).unwrap_or_else(|e| usage_error(&e.to_string()));
    let (n_m, n_m1) = generator_counts(&curve);
    let (e_omega, e_tpi) = defects(&curve);
    let betti: Vec<(u8, i64, i64)> =
        table.entries.iter().map(|(&(i, j), &b)| (i, j, b)).collect();

    let mut rows = vec![
        vec!["curve".to_string(), format!("({d},{g})")],
        vec!["critical value".to_string(), curve.m.to_string()],
        vec!["generators deg m".to_string(), n_m.to_string()],
        vec!["generators deg m+1".to_string(), n_m1.to_string()],
        vec!["defect cotangent".to_string(), e_omega.to_string()],
        vec!["defect tangent".to_string(), e_tpi.to_string()],
        vec![
            "numerator".to_string(),
            table.numerator.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(" "),
        ],
    ];
    rows.push(vec!["".to_string()]);
    rows.push(vec!["i".to_string(), "j".to_string(), "beta".to_string()]);
    let mut csv = vec![vec!["i".to_string(), "j".to_string(), "beta".to_string()]];
    for &(i, j, b) in &betti {
        rows.push(vec![i.to_string(), j.to_string(), b.to_string()]);
        csv.push(vec![i.to_string(), j.to_string(), b.to_string()]);
    }

    let payload = BettiPayload {
        d,
        g,
        critical_value: curve.m,
        generators_deg_m: n_m,
        generators_deg_m1: n_m1,
        defect_omega: e_omega,
        defect_tpi: e_tpi,
        numerator: table.numerator.clone(),
        betti,
    };
    Emitted {
        command: "betti".to_string(),
        status: Status::Ok,
        payload: serde_json::to_value(payload).expect("serializable"),
        text: align(&rows),
        csv,
    }
}

fn seq_row_cells(rec: &SeqRecord, stars_only: bool) -> Vec<String> {
    if stars_only {
        let s = rec.star.expect("star families only");
        return vec![rec.m.to_string(), s.base.to_string(), s.rem.to_string()];
    }
    let mut cells = vec![
        rec.m.to_string(),
        rec.base.to_string(),
        rec.rem_a.to_string(),
        rec.rem_b.to_string(),
    ];
    if let Some(s) = rec.star {
        cells.push(s.base.to_string());
        cells.push(s.rem.to_string());
    }
    cells
}

fn cmd_seq(family: SeqFamilyArg, from: i64, to: i64) -> Emitted {
    if from < family.min_index() || from > to {
        usage_error(&format!(
            "index range must satisfy {} <= from <= to, got {from}..{to}",
            family.min_index()
        ));
    }
    let mut records = Vec::new();
    for m in from..=to {
        records.push(
            solve_family(m, family.family()).unwrap_or_else(|e| usage_error(&e.to_string())),
        );
    }
    let stars_only = family.stars_only();
    let header: Vec<String> = if stars_only {
        ["m", "star", "star_rem"].iter().map(|s| s.to_string()).collect()
    } else if records.first().and_then(|r| r.star).is_some() {
        ["m", "base", "rem_a", "rem_b", "star", "star_rem"]
            .iter()
            .map(|s| s.to_string())
            .collect()
    } else {
        ["m", "base", "rem"].iter().map(|s| s.to_string()).collect()
    };
    let mut rows = vec![header.clone()];
    let mut csv = vec![header];
    for rec in &records {
        let cells = if rec.star.is_none() && !stars_only {
            vec![rec.m.to_string(), rec.base.to_string(), rec.rem_a.to_string()]
        } else {
            seq_row_cells(rec, stars_only)
        };
        rows.push(cells.clone());
        csv.push(cells);
    }
    let payload = if stars_only {
        json!(records
            .iter()
            .map(|r| {
                let s = r.star.expect("star families only");
                json!({"m": r.m, "star": s.base, "star_rem": s.rem})
            })
            .collect::<Vec<_>>())
    } else {
        serde_json::to_value(&records).expect("serializable")
    };
    Emitted {
        command: "seq".to_string(),
        status: Status::Ok,
        payload,
        text: align(&rows),
        csv,
    }
}

fn cmd_verify_tables(corpus: &Corpus) -> Emitted {
    let diffs = corpus.diff_tables().unwrap_or_else(|e| usage_error(&e.to_string()));
    let quadric = quadric_printed_diff(-5, 30);
    let status = if diffs.is_empty() && quadric.is_empty() { Status::Ok } else { Status::Diffs };

    let mut rows = vec![vec![
        "family".to_string(),
        "m".to_string(),
        "paper".to_string(),
        "computed".to_string(),
        "delta".to_string(),
    ]];
    let mut csv = rows.clone();
    for d in &diffs {
        let cells = vec![
            d.family.key().to_string(),
            d.m.to_string(),
            d.paper_value.to_string(),
            d.computed_value.to_string(),
            d.delta.to_string(),
        ];
        rows.push(cells.clone());
        csv.push(cells);
    }
    rows.push(vec!["".to_string()]);
    rows.push(vec![
        "bundle".to_string(),
        "x".to_string(),
        "y".to_string(),
        "printed".to_string(),
        "computed".to_string(),
        "exact".to_string(),
    ]);
    for q in &quadric {
        let cells = vec![
            format!("{:?}", q.bundle),
            q.x.to_string(),
            q.y.to_string(),
            q.printed.to_string(),
            q.computed.to_string(),
            q.exact.to_string(),
        ];
        rows.push(cells.clone());
        csv.push(cells);
    }
    Emitted {
        command: "verify tables".to_string(),
        status,
        payload: json!({
            "table_diffs": diffs,
            "quadric_formula_diffs": quadric,
        }),
        text: align(&rows),
        csv,
    }
}

fn cmd_verify_lemmas(max_m: i64) -> Emitted {
    let report = run_lemma_sweeps(max_m, 200, 2_000.min(max_m))
        .unwrap_or_else(|e| usage_error(&e.to_string()));
    let status = if report.clean() { Status::Ok } else { Status::Diffs };
    let mut rows = vec![vec!["window".to_string(), "checked".to_string()]];
    for (name, n) in &report.checked {
        rows.push(vec![name.clone(), n.to_string()]);
    }
    rows.push(vec!["violations".to_string(), report.violations.len().to_string()]);
    let mut csv = vec![vec![
        "window".to_string(),
        "m".to_string(),
        "g".to_string(),
        "lhs".to_string(),
        "rhs".to_string(),
    ]];
    for v in &report.violations {
        rows.push(vec![
            v.name.to_string(),
            v.m.to_string(),
            v.g.map(|g| g.to_string()).unwrap_or_default(),
            v.lhs.to_string(),
            v.rhs.to_string(),
        ]);
        csv.push(vec![
            v.name.to_string(),
            v.m.to_string(),
            v.g.map(|g| g.to_string()).unwrap_or_default(),
            v.lhs.to_string(),
            v.rhs.to_string(),
        ]);
    }
    let mut text = align(&rows);
    for note in &report.notes {
        text.push_str(&format!("# {note}\n"));
    }
    Emitted {
        command: "verify lemmas".to_string(),
        status,
        payload: serde_json::to_value(&report).expect("serializable"),
        text,
        csv,
    }
}

fn cmd_verify_steps(corpus: &Corpus, case: Option<&str>) -> Emitted {
    if let Some(id) = case {
        if corpus.recipe(id).is_none() {
            usage_error(&format!("no recipe with id {id}"));
        }
    }
    let reports = corpus.verify_steps(case);
    let any_flag = reports
        .iter()
        .any(|r| r.checks.iter().any(|c| c.verdict == Verdict::Flag));
    let mut rows = vec![vec![
        "recipe".to_string(),
        "check".to_string(),
        "lhs".to_string(),
        "rhs".to_string(),
        "verdict".to_string(),
    ]];
    let mut csv = rows.clone();
    let mut notes = String::new();
    for r in &reports {
        for c in &r.checks {
            let cells = vec![
                r.recipe_id.clone(),
                c.name.clone(),
                c.lhs.to_string(),
                c.rhs.to_string(),
                format!("{:?}", c.verdict).to_uppercase(),
            ];
            rows.push(cells.clone());
            csv.push(cells);
        }
        for note in &r.notes {
            notes.push_str(&format!("# {}: {note}\n", r.recipe_id));
        }
    }
    Emitted {
        command: "verify steps".to_string(),
        status: if any_flag { Status::Diffs } else { Status::Ok },
        payload: serde_json::to_value(&reports).expect("serializable"),
        text: align(&rows) + &notes,
        csv,
    }
}

fn cmd_verify_constants(corpus: &Corpus) -> Emitted {
    let rows_data = corpus.constants_check().unwrap_or_else(|e| usage_error(&e.to_string()));
    let any_diff = rows_data
        .iter()
        .any(|r| r.computed_value.is_some_and(|c| c != r.paper_value));
    let mut rows = vec![vec![
        "name".to_string(),
        "paper".to_string(),
        "computed".to_string(),
    ]];
    let mut csv = rows.clone();
    for r in &rows_data {
        let cells = vec![
            r.name.clone(),
            r.paper_value.to_string(),
            r.computed_value.map(|c| c.to_string()).unwrap_or_else(|| "-".to_string()),
        ];
        rows.push(cells.clone());
        csv.push(cells);
    }
    Emitted {
        command: "verify constants".to_string(),
        status: if any_diff { Status::Diffs } else { Status::Ok },
        payload: serde_json::to_value(&rows_data).expect("serializable"),
        text: align(&rows),
        csv,
    }
}

fn cmd_schedule(s: i64, steps: u32) -> Emitted {
    let mut rec = schedule_start(s).unwrap_or_else(|e| usage_error(&e.to_string()));
    let mut records: Vec<ScheduleRecord> = vec![rec];
    for _ in 0..steps {
        rec = schedule_step(&rec).unwrap_or_else(|e| usage_error(&e.to_string()));
        records.push(rec);
    }
    let note = "initial leftover read as the starred remainder of the start index, \
                as the recursion's base equation forces";
    let mut rows = vec![vec![
        "x".to_string(),
        "u".to_string(),
        "g".to_string(),
        "v".to_string(),
    ]];
    let mut csv = rows.clone();
    for r in &records {
        let cells = vec![r.x.to_string(), r.u.to_string(), r.g.to_string(), r.v.to_string()];
        rows.push(cells.clone());
        csv.push(cells);
    }
    Emitted {
        command: "schedule".to_string(),
        status: Status::Ok,
        payload: json!({"note": note, "records": records}),
        text: align(&rows) + &format!("# {note}\n"),
        csv,
    }
}
