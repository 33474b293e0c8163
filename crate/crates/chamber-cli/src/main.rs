//! Command-line surface for the chamber library: validation, zigzag
//! inventories, z-connectedness, geodesics, Coxeter complexes, polytopes and
//! built-in generators, with JSON reports for scripting.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use chamber::complex::{
    builtin, parse_cplx, validate_thin_chamber, Builtin, Face, ThinChamberComplex,
};
use chamber::coxeter::{
    coxeter_complex, coxeter_number, verify_zigzag_law, CoxeterMatrix, DEFAULT_ELEMENT_CAP,
};
use chamber::geodesic::{is_distance_normal_pair, zigzags_through_geodesic};
use chamber::polytope::{
    builtin_polytope, check_flag_complex_correspondence, generalized_zigzag, AbstractPolytope,
};
use chamber::zigzag::{enumerate_zigzags, summarize_zigzags, ZigzagInventory};

#[derive(Parser)]
#[command(
    name = "chamber",
    version,
    about = "Zigzags in thin chamber complexes, Coxeter complexes and abstract polytopes"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Emit a JSON report (key-sorted, schema-stable) instead of text.
    #[arg(long, global = true)]
    json: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Validate a .cplx file: rank, counts, thin/chamber verdicts.
    Validate { file: PathBuf },
    /// Enumerate the zigzags of a .cplx file.
    Zigzags {
        file: PathBuf,
        /// Also print the k-shadow of every zigzag.
        #[arg(long)]
        shadow: Option<usize>,
    },
    /// z-connectedness of faces of one rank: all-pairs matrix or one pair.
    Zconnect {
        file: PathBuf,
        /// Face rank k (faces have k+1 vertices).
        #[arg(long)]
        rank: usize,
        /// First face, as space-separated vertex tokens.
        #[arg(long, requires = "to", allow_hyphen_values = true)]
        from: Option<String>,
        /// Second face.
        #[arg(long, requires = "from", allow_hyphen_values = true)]
        to: Option<String>,
    },
    /// Distance, normality and zigzag extensions for a facet pair.
    Geodesic {
        file: PathBuf,
        /// First facet, as space-separated vertex tokens.
        #[arg(long, allow_hyphen_values = true)]
        from: String,
        /// Second facet.
        #[arg(long, allow_hyphen_values = true)]
        to: String,
    },
    /// Enumerate a Coxeter group (by name or .cox file) and its complex.
    Coxeter {
        name_or_file: String,
        /// Check the zigzag law of the Coxeter complex (exit 2 on failure).
        #[arg(long)]
        verify: bool,
        /// Element budget for the enumeration.
        #[arg(long, default_value_t = DEFAULT_ELEMENT_CAP)]
        cap: usize,
        /// Seed for sampled checks.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Allow long verifications (large groups such as H4 or E6).
        #[arg(long)]
        deep: bool,
    },
    /// Build a polytope (built-in name or .apoly file) and report on its
    /// generalized zigzags.
    Polytope {
        name_or_file: String,
        /// Verify the bijection with the flag-complex zigzags (exit 2 on
        /// failure).
        #[arg(long)]
        check_correspondence: bool,
        /// Write the polytope in .apoly JSON form.
        #[arg(long)]
        emit: Option<PathBuf>,
        /// Allow long checks (600-cell scale).
        #[arg(long)]
        deep: bool,
    },
    /// Emit a built-in complex as .cplx text.
    Make {
        /// simplex:N, cross:N, bipyramid:M or coxeter:NAME.
        name: String,
        /// Output path; stdout when omitted.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

/// Verification failures exit 2; everything else that goes wrong exits 1.
enum Failure {
    Validation(String),
    Verification(String, Value),
}

impl<E: std::error::Error> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure::Validation(e.to_string())
    }
}

fn digest(bytes: &[u8]) -> String {
    let mut hasher = Sha256::new();
    hasher.update(bytes);
    hex::encode(&hasher.finalize()[..6])
}

mod hex {
    pub fn encode(bytes: &[u8]) -> String {
        bytes.iter().map(|b| format!("{b:02x}")).collect()
    }
}

fn load_complex(file: &PathBuf) -> Result<(ThinChamberComplex, String), Failure> {
    let text = fs::read_to_string(file)
        .map_err(|e| Failure::Validation(format!("{}: {e}", file.display())))?;
    let complex = parse_cplx(&text)?;
    let tcc = validate_thin_chamber(complex)?;
    Ok((tcc, digest(text.as_bytes())))
}

fn parse_face(tcc: &ThinChamberComplex, tokens: &str) -> Result<Face, Failure> {
    let parts: Vec<&str> = tokens.split_whitespace().collect();
    if parts.is_empty() {
        return Err(Failure::Validation("empty face".into()));
    }
    Ok(tcc.complex().face_by_labels(&parts)?)
}

fn face_string(tcc: &ThinChamberComplex, face: &Face) -> String {
    tcc.complex().face_labels(face)
}

fn cmd_validate(file: &PathBuf, json: bool) -> Result<(Value, String), Failure> {
    let (tcc, input) = load_complex(file)?;
    let result = json!({
        "rank": tcc.rank(),
        "facets": tcc.num_facets(),
        "vertices": tcc.num_vertices(),
        "thin": true,
        "chamber": true,
    });
    if !json {
        println!("rank: {}", tcc.rank());
        println!("facets: {}", tcc.num_facets());
        println!("vertices: {}", tcc.num_vertices());
        println!("thin: true\nchamber: true");
    }
    Ok((result, input))
}

fn cmd_zigzags(
    file: &PathBuf,
    shadow: Option<usize>,
    json: bool,
) -> Result<(Value, String), Failure> {
    let (tcc, input) = load_complex(file)?;
    let zigzags = enumerate_zigzags(&tcc);
    let summary = summarize_zigzags(&tcc, &zigzags);
    let mut items = Vec::new();
    for z in &zigzags {
        let mut item = json!({"length": z.length(), "simple": z.is_simple()});
        if let Some(k) = shadow {
            let sh = z.shadow(k)?;
            item["shadow"] = Value::Array(
                sh.faces()
                    .iter()
                    .map(|f| Value::String(face_string(&tcc, f)))
                    .collect(),
            );
        }
        items.push(item);
    }
    let orbit_sum: usize = summary.lengths.iter().map(|l| 2 * l).sum();
    let total_flags = (1..=tcc.rank()).product::<usize>() * tcc.num_facets();
    let result = json!({
        "count": summary.count,
        "z_simple": summary.z_simple,
        "z_uniform": summary.z_uniform,
        "common_length": summary.common_length,
        "count_formula_ok": summary.count_formula_ok,
        "flag_conservation_ok": orbit_sum == total_flags,
        "zigzags": items,
    });
    if !json {
        println!("zigzags: {}", summary.count);
        match summary.common_length {
            Some(l) => println!("length: {l} (uniform)"),
            None => println!("lengths: {:?}", summary.lengths),
        }
        println!("z-simple: {}", summary.z_simple);
        println!("z-uniform: {}", summary.z_uniform);
        println!(
            "flag conservation Σ2l = n!·N: {} ({orbit_sum} of {total_flags})",
            if orbit_sum == total_flags {
                "ok"
            } else {
                "VIOLATED"
            }
        );
        if let Some(ok) = summary.count_formula_ok {
            println!(
                "count formula n!N/2l: {}",
                if ok { "ok" } else { "VIOLATED" }
            );
        }
        for (i, z) in zigzags.iter().enumerate() {
            let tag = if z.is_simple() {
                "simple"
            } else {
                "non-simple"
            };
            match shadow {
                Some(k) => {
                    let sh = z.shadow(k)?;
                    let faces: Vec<String> =
                        sh.faces().iter().map(|f| face_string(&tcc, f)).collect();
                    println!(
                        "zigzag {i}: length {}, {tag}, {k}-shadow: {}",
                        z.length(),
                        faces.join(" ")
                    );
                }
                None => println!("zigzag {i}: length {}, {tag}", z.length()),
            }
        }
    }
    // The formula failing is data, not an error; uniform complexes always
    // satisfy it by conservation (rank-1 degeneracy aside).
    Ok((result, input))
}

fn cmd_zconnect(
    file: &PathBuf,
    rank: usize,
    from: &Option<String>,
    to: &Option<String>,
    json: bool,
) -> Result<(Value, String), Failure> {
    let (tcc, input) = load_complex(file)?;
    if rank >= tcc.rank() {
        return Err(Failure::Validation(format!(
            "rank {rank} out of range for a rank-{} complex",
            tcc.rank()
        )));
    }
    let inventory = ZigzagInventory::build(&tcc);
    if let (Some(from), Some(to)) = (from, to) {
        let x = parse_face(&tcc, from)?;
        let y = parse_face(&tcc, to)?;
        for f in [&x, &y] {
            if f.len() != rank + 1 || !tcc.complex().is_face(f) {
                return Err(Failure::Validation(format!(
                    "{{{}}} is not a rank-{rank} face",
                    face_string(&tcc, f)
                )));
            }
        }
        let connected = inventory.connects(&x, &y);
        if !json {
            println!(
                "{{{}}} and {{{}}}: {}",
                face_string(&tcc, &x),
                face_string(&tcc, &y),
                if connected {
                    "z-connected"
                } else {
                    "not z-connected"
                }
            );
        }
        return Ok((json!({"rank": rank, "connected": connected}), input));
    }
    let faces = tcc.complex().faces_at_level(rank)?;
    let names: Vec<String> = faces.iter().map(|f| face_string(&tcc, f)).collect();
    let rows: Vec<String> = faces
        .iter()
        .map(|x| {
            faces
                .iter()
                .map(|y| if inventory.connects(x, y) { '1' } else { '0' })
                .collect()
        })
        .collect();
    if !json {
        for (name, row) in names.iter().zip(&rows) {
            println!("{name}: {row}");
        }
    }
    Ok((json!({"rank": rank, "faces": names, "matrix": rows}), input))
}

fn cmd_geodesic(
    file: &PathBuf,
    from: &str,
    to: &str,
    json: bool,
) -> Result<(Value, String), Failure> {
    let (tcc, input) = load_complex(file)?;
    let x = parse_face(&tcc, from)?;
    let y = parse_face(&tcc, to)?;
    let verdict = is_distance_normal_pair(&tcc, &x, &y)?;
    let witness: Option<Vec<String>> = verdict
        .witness_geodesic
        .as_ref()
        .map(|p| p.facets.iter().map(|f| face_string(&tcc, f)).collect());
    let extensions = match &verdict.witness_geodesic {
        Some(p) => Some(zigzags_through_geodesic(&tcc, p)?.len()),
        None => None,
    };
    let result = json!({
        "distance": verdict.distance,
        "intersection": verdict.intersection,
        "normal": verdict.pair_normal,
        "reason": verdict.reason,
        "witness": witness,
        "extensions": extensions,
    });
    if !json {
        println!("d(X,Y) = {}", verdict.distance);
        println!("|X∩Y| = {}", verdict.intersection);
        println!("distance normal pair: {}", verdict.pair_normal);
        println!("reason: {}", verdict.reason);
        if let Some(w) = &witness {
            println!("witness geodesic: {}", w.join(" -> "));
        }
        if let Some(e) = extensions {
            println!("zigzags extending the witness: {e}");
        }
    }
    Ok((result, input))
}

fn resolve_matrix(name_or_file: &str) -> Result<(CoxeterMatrix, String), Failure> {
    if name_or_file.ends_with(".cox") || PathBuf::from(name_or_file).exists() {
        let text = fs::read_to_string(name_or_file)
            .map_err(|e| Failure::Validation(format!("{name_or_file}: {e}")))?;
        Ok((CoxeterMatrix::parse_cox(&text)?, digest(text.as_bytes())))
    } else {
        Ok((
            CoxeterMatrix::builtin(name_or_file)?,
            digest(name_or_file.as_bytes()),
        ))
    }
}

fn cmd_coxeter(
    name_or_file: &str,
    verify: bool,
    cap: usize,
    seed: u64,
    deep: bool,
    json: bool,
) -> Result<(Value, String), Failure> {
    let (matrix, input) = resolve_matrix(name_or_file)?;
    let data = coxeter_complex(&matrix, cap)?;
    let order = data.table.size();
    let n = matrix.rank();
    let h = coxeter_number(&data.table, seed).map_err(|e| Failure::Validation(e.to_string()))?;
    let mut result = json!({
        "rank": n,
        "order": order,
        "coxeter_number": h,
        "complex": {
            "vertices": data.complex.num_vertices(),
            "facets": data.complex.num_facets(),
        },
        // Only left multiplications are available as automorphisms; deciding
        // z-transitivity would need the diagram-induced maps as well.
        "z_transitive": "not decided",
    });
    if !json {
        println!("rank: {n}");
        println!("|W| = {order}");
        println!("h = {h}");
        println!(
            "complex: {} vertices, {} facets",
            data.complex.num_vertices(),
            data.complex.num_facets()
        );
        println!("z-transitive: not decided (diagram automorphisms not implemented)");
    }
    if verify {
        let total_flags = (1..=n).product::<usize>() * order;
        if total_flags > 200_000 && !deep {
            return Err(Failure::Validation(format!(
                "{total_flags} flags to enumerate; pass --deep to confirm"
            )));
        }
        match verify_zigzag_law(&data, seed, 8) {
            Ok(report) => {
                result["verify"] = json!({
                    "pass": true,
                    "zigzag_count": report.zigzag_count,
                    "zigzag_length": report.zigzag_length,
                    "z_simple": report.z_simple,
                    "shadow_samples": report.shadow_samples,
                });
                if !json {
                    println!(
                        "verify: PASS ({} zigzags × length {}, all simple, {} shadow samples)",
                        report.zigzag_count, report.zigzag_length, report.shadow_samples
                    );
                }
            }
            Err(e) => {
                result["verify"] = json!({"pass": false, "error": e.to_string()});
                if !json {
                    println!("verify: FAIL ({e})");
                }
                return Err(Failure::Verification(e.to_string(), result));
            }
        }
    }
    Ok((result, input))
}

fn polytope_to_apoly(p: &AbstractPolytope) -> Value {
    json!({
        "rank": p.rank(),
        "faces": p.labels(),
        "incidence": p
            .incidence_triples()
            .iter()
            .map(|&(k, lo, hi)| json!([k, lo, hi]))
            .collect::<Vec<_>>(),
    })
}

fn polytope_from_apoly(text: &str) -> Result<AbstractPolytope, Failure> {
    let v: Value = serde_json::from_str(text)
        .map_err(|e| Failure::Validation(format!("invalid .apoly JSON: {e}")))?;
    let rank = v["rank"]
        .as_u64()
        .ok_or_else(|| Failure::Validation("missing \"rank\"".into()))? as usize;
    let faces = v["faces"]
        .as_array()
        .ok_or_else(|| Failure::Validation("missing \"faces\"".into()))?;
    if faces.len() != rank {
        return Err(Failure::Validation(format!(
            "\"faces\" must hold one list per rank 0..{rank}"
        )));
    }
    let mut labels: Vec<Vec<String>> = Vec::with_capacity(rank);
    for per_rank in faces {
        let list = per_rank
            .as_array()
            .ok_or_else(|| Failure::Validation("each \"faces\" entry must be a list".into()))?;
        labels.push(
            list.iter()
                .map(|l| {
                    l.as_str()
                        .map(|s| s.to_string())
                        .ok_or_else(|| Failure::Validation("face labels must be strings".into()))
                })
                .collect::<Result<_, _>>()?,
        );
    }
    let triples = v["incidence"]
        .as_array()
        .ok_or_else(|| Failure::Validation("missing \"incidence\"".into()))?
        .iter()
        .map(|t| {
            let t = t.as_array().filter(|t| t.len() == 3).ok_or_else(|| {
                Failure::Validation("incidence entries are [k, low, high]".into())
            })?;
            Ok((
                t[0].as_u64().unwrap_or(u64::MAX) as usize,
                t[1].as_u64().unwrap_or(u64::MAX) as u32,
                t[2].as_u64().unwrap_or(u64::MAX) as u32,
            ))
        })
        .collect::<Result<Vec<_>, Failure>>()?;
    Ok(AbstractPolytope::new(labels, &triples)?)
}

fn cmd_polytope(
    name_or_file: &str,
    check: bool,
    emit: &Option<PathBuf>,
    deep: bool,
    json: bool,
) -> Result<(Value, String), Failure> {
    let (p, input) = if name_or_file.ends_with(".apoly") || PathBuf::from(name_or_file).exists() {
        let text = fs::read_to_string(name_or_file)
            .map_err(|e| Failure::Validation(format!("{name_or_file}: {e}")))?;
        (polytope_from_apoly(&text)?, digest(text.as_bytes()))
    } else {
        (
            builtin_polytope(name_or_file)?,
            digest(name_or_file.as_bytes()),
        )
    };
    let n = p.rank();
    let flags = p.flags();
    let big = flags.len() > 10_000;
    if big && check && !deep {
        return Err(Failure::Validation(format!(
            "{} flags to cross-check; pass --deep to confirm",
            flags.len()
        )));
    }

    // Orbit lengths per generator order; all permutations up to a cap.
    let mut deltas: Vec<Vec<usize>> = Vec::new();
    {
        use itertools::Itertools;
        for (i, d) in (0..n).permutations(n).enumerate() {
            if i >= 24 {
                break;
            }
            deltas.push(d);
        }
    }
    let mut lengths: Vec<usize> = Vec::new();
    for delta in &deltas {
        if big && !deep {
            // One orbit per order keeps the default run quick.
            lengths.push(generalized_zigzag(&p, delta, &flags[0])?.length());
        } else {
            for f in &flags {
                lengths.push(generalized_zigzag(&p, delta, f)?.length());
            }
        }
    }
    lengths.sort_unstable();
    lengths.dedup();
    let uniform = lengths.len() == 1;

    let mut result = json!({
        "rank": n,
        "face_vector": p.face_vector(),
        "flags": flags.len(),
        "zigzag_lengths": lengths,
        "delta_independent": uniform,
        "deltas_checked": deltas.len(),
    });
    if !json {
        println!("rank: {n}");
        println!("face vector: {:?}", p.face_vector());
        println!("flags: {}", flags.len());
        if uniform {
            println!(
                "generalized zigzag length: {} ({} orders checked, independent of order)",
                result["zigzag_lengths"][0],
                deltas.len()
            );
        } else {
            println!("generalized zigzag lengths: {:?}", result["zigzag_lengths"]);
        }
    }

    if let Some(path) = emit {
        fs::write(
            path,
            serde_json::to_string_pretty(&polytope_to_apoly(&p)).unwrap() + "\n",
        )
        .map_err(|e| Failure::Validation(format!("{}: {e}", path.display())))?;
        if !json {
            println!("wrote {}", path.display());
        }
    }

    if check {
        match check_flag_complex_correspondence(&p) {
            Ok(report) => {
                result["correspondence"] = json!({
                    "pass": true,
                    "generalized_zigzags": report.generalized_count,
                    "flag_complex_zigzags": report.flag_complex_zigzag_count,
                    "uniform_length": report.uniform_length,
                    "count_formula_ok": report.count_formula_ok,
                });
                if !json {
                    println!(
                        "correspondence: PASS ({} generalized ↔ {} flag-complex zigzags)",
                        report.generalized_count, report.flag_complex_zigzag_count
                    );
                }
            }
            Err(e) => {
                result["correspondence"] = json!({"pass": false, "error": e.to_string()});
                if !json {
                    println!("correspondence: FAIL ({e})");
                }
                return Err(Failure::Verification(e.to_string(), result));
            }
        }
    }
    Ok((result, input))
}

fn cmd_make(name: &str, output: &Option<PathBuf>, json: bool) -> Result<(Value, String), Failure> {
    let tcc = if let Some(rest) = name.strip_prefix("coxeter:") {
        let matrix = CoxeterMatrix::builtin(rest)?;
        coxeter_complex(&matrix, DEFAULT_ELEMENT_CAP)?.complex
    } else {
        let (kind, num) = name
            .split_once(':')
            .ok_or_else(|| Failure::Validation(format!("unknown builtin `{name}`")))?;
        let n: usize = num
            .parse()
            .map_err(|_| Failure::Validation(format!("invalid parameter in `{name}`")))?;
        match kind {
            "simplex" => builtin(Builtin::Simplex(n))?,
            "cross" => builtin(Builtin::CrossPolytope(n))?,
            "bipyramid" => builtin(Builtin::Bipyramid(n))?,
            _ => return Err(Failure::Validation(format!("unknown builtin `{name}`"))),
        }
    };
    let text = tcc.complex().to_cplx();
    match output {
        Some(path) => {
            fs::write(path, &text)
                .map_err(|e| Failure::Validation(format!("{}: {e}", path.display())))?;
            if !json {
                println!("wrote {}", path.display());
            }
        }
        None => {
            if !json {
                print!("{text}");
            }
        }
    }
    let result = json!({
        "rank": tcc.rank(),
        "facets": tcc.num_facets(),
        "vertices": tcc.num_vertices(),
        "cplx": text,
    });
    Ok((result, digest(name.as_bytes())))
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let started = Instant::now();
    let command_echo = command_name(&cli.command);
    let outcome = match &cli.command {
        Command::Validate { file } => cmd_validate(file, cli.json),
        Command::Zigzags { file, shadow } => cmd_zigzags(file, *shadow, cli.json),
        Command::Zconnect {
            file,
            rank,
            from,
            to,
        } => cmd_zconnect(file, *rank, from, to, cli.json),
        Command::Geodesic { file, from, to } => cmd_geodesic(file, from, to, cli.json),
        Command::Coxeter {
            name_or_file,
            verify,
            cap,
            seed,
            deep,
        } => cmd_coxeter(name_or_file, *verify, *cap, *seed, *deep, cli.json),
        Command::Polytope {
            name_or_file,
            check_correspondence,
            emit,
            deep,
        } => cmd_polytope(name_or_file, *check_correspondence, emit, *deep, cli.json),
        Command::Make { name, output } => cmd_make(name, output, cli.json),
    };
    match outcome {
        Ok((result, input)) => {
            emit_report(&cli, &command_echo, &input, result, started);
            ExitCode::SUCCESS
        }
        Err(Failure::Validation(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Verification(msg, partial)) => {
            emit_report(&cli, &command_echo, "", partial, started);
            eprintln!("verification failed: {msg}");
            ExitCode::from(2)
        }
    }
}

fn command_name(cmd: &Command) -> String {
    match cmd {
        Command::Validate { file } => format!("validate {}", file.display()),
        Command::Zigzags { file, .. } => format!("zigzags {}", file.display()),
        Command::Zconnect { file, rank, .. } => {
            format!("zconnect {} --rank {rank}", file.display())
        }
        Command::Geodesic { file, .. } => format!("geodesic {}", file.display()),
        Command::Coxeter { name_or_file, .. } => format!("coxeter {name_or_file}"),
        Command::Polytope { name_or_file, .. } => format!("polytope {name_or_file}"),
        Command::Make { name, .. } => format!("make {name}"),
    }
}

fn emit_report(cli: &Cli, command: &str, input: &str, result: Value, started: Instant) {
    if cli.json {
        let report = json!({
            "command": command,
            "input": input,
            "result": result,
            "timing_ms": started.elapsed().as_millis() as u64,
        });
        println!("{}", serde_json::to_string(&report).unwrap());
    }
}
