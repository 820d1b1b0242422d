//! Batch front-end for the `minuscule` library: enumerate stratified
//! elements, compute coefficients, run verification suites, export heaps.
//!
//! Exit codes: 0 on success, 1 on a verification failure or coefficient
//! disagreement, 2 on a usage error.

use clap::{Args, Parser, Subcommand};
use minuscule::cartan::{catalog, CartanData, Weight};
use minuscule::heap::{build_heap, minuscule_strata, ColoredHeap, StratumHeap};
use minuscule::schubert::{equivariant_expansion, LocalizationTable, SchubertContext};
use minuscule::taquin::{m_coeff, t_coeff};
use minuscule::verify::{run_suite, SUITE_NAMES};
use minuscule::weyl::{canonicalize, WeylElement};
use serde_json::json;
use std::io::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "minuscule", version, about = "Exact minuscule/cominuscule Schubert calculus")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// List the stratified minimal coset representatives per length.
    Enumerate(EnumerateArgs),
    /// Compute t, m, t·m and the oracle constant for a triple u, v, w.
    Coeff(CoeffArgs),
    /// Run one named verification suite, or `all`.
    Verify(VerifyArgs),
    /// Export heaps as DOT, JSON, or TSV.
    Export(ExportArgs),
}

#[derive(Args)]
struct DiagramArgs {
    /// Catalog tag of the diagram (A3, D5, E7, F4, tw-affine-F4-2, ...).
    #[arg(long = "type")]
    type_tag: Option<String>,
    /// JSON file with a generalized Cartan matrix: {"nodes": [...], "a": [[...]]}.
    #[arg(long)]
    gcm_file: Option<PathBuf>,
    /// Label of the marked node.
    #[arg(long)]
    marked: String,
    /// Use the cominuscule (dual root data) convention for heaps.
    #[arg(long)]
    cominuscule: bool,
}

impl DiagramArgs {
    fn resolve(&self) -> Result<(CartanData, Weight, usize), String> {
        let data = match (&self.type_tag, &self.gcm_file) {
            (Some(tag), None) => catalog(tag).map_err(|e| e.to_string())?,
            (None, Some(path)) => {
                let text = std::fs::read_to_string(path).map_err(|e| e.to_string())?;
                let parsed: minuscule::cartan::DiagramJson =
                    serde_json::from_str(&text).map_err(|e| e.to_string())?;
                minuscule::cartan::load_diagram(&minuscule::cartan::DiagramSpec::Explicit(parsed))
                    .map_err(|e| e.to_string())?
            }
            _ => return Err("exactly one of --type and --gcm-file is required".into()),
        };
        let marked = data
            .node_index(&self.marked)
            .ok_or_else(|| format!("no node labeled {}", self.marked))?;
        let lambda = Weight::fundamental(data.n(), marked);
        Ok((data, lambda, marked))
    }
}

#[derive(Args)]
struct EnumerateArgs {
    #[command(flatten)]
    diagram: DiagramArgs,
    /// Largest length to enumerate.
    #[arg(long, default_value_t = 8)]
    max_len: usize,
    /// Output format: json or tsv.
    #[arg(long, default_value = "tsv")]
    format: String,
}

#[derive(Args)]
struct CoeffArgs {
    #[command(flatten)]
    diagram: DiagramArgs,
    /// An element as a comma-separated reduced word of node labels
    /// (may be repeated; elements are read as u, v, w in order, with
    /// ideal-form elements after word-form ones).
    #[arg(long = "word")]
    words: Vec<String>,
    /// An element as an ideal generator list `label:occurrence,...`
    /// resolved in the heap of w (or of --ambient).
    #[arg(long = "ideal")]
    ideals: Vec<String>,
    /// Reduced word of an ambient element whose heap hosts ideal-form
    /// elements (defaults to w).
    #[arg(long)]
    ambient: Option<String>,
    /// Truncation budget for the oracle; the oracle is skipped when
    /// l(u)+l(v) exceeds it.
    #[arg(long)]
    max_len: Option<usize>,
    /// Also print the torus-equivariant expansion of the product.
    #[arg(long)]
    equivariant: bool,
    /// Output format: json or tsv.
    #[arg(long, default_value = "json")]
    format: String,
}

#[derive(Args)]
struct VerifyArgs {
    /// Suite name, or `all`.
    suite_pos: Option<String>,
    /// Suite name, or `all` (flag alias of the positional).
    #[arg(long)]
    suite: Option<String>,
    /// Seed for the randomized suites.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Number of parallel suite jobs (0 = rayon default).
    #[arg(long, default_value_t = 0)]
    jobs: usize,
}

#[derive(Args)]
struct ExportArgs {
    #[command(flatten)]
    diagram: DiagramArgs,
    /// Reduced word of the element whose heap is exported; when omitted,
    /// every heap of length --max-len is exported into --out.
    #[arg(long)]
    word: Option<String>,
    /// Length for bulk export.
    #[arg(long)]
    max_len: Option<usize>,
    /// Output format: dot, json, or tsv.
    #[arg(long, default_value = "dot")]
    format: String,
    /// Output file (single export) or directory (bulk export); stdout when
    /// omitted on single export.
    #[arg(long)]
    out: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.cmd {
        Cmd::Enumerate(args) => cmd_enumerate(args),
        Cmd::Coeff(args) => cmd_coeff(args),
        Cmd::Verify(args) => cmd_verify(args),
        Cmd::Export(args) => cmd_export(args),
    };
    match result {
        Ok(code) => code,
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn parse_word(data: &CartanData, text: &str) -> Result<WeylElement, String> {
    let mut word = Vec::new();
    for part in text.split(',').filter(|p| !p.is_empty()) {
        let i = data
            .node_index(part.trim())
            .ok_or_else(|| format!("no node labeled {part}"))?;
        word.push(i as u8);
    }
    let elem = canonicalize(data, &word);
    if elem.len() != word.len() {
        return Err(format!("word {text} is not reduced"));
    }
    Ok(elem)
}

fn parse_ideal(data: &CartanData, h: &ColoredHeap, text: &str) -> Result<WeylElement, String> {
    let mut generators = Vec::new();
    for part in text.split(',').filter(|p| !p.is_empty()) {
        let (label, occ) = part
            .split_once(':')
            .ok_or_else(|| format!("ideal generator {part} is not label:occurrence"))?;
        let color = data
            .node_index(label.trim())
            .ok_or_else(|| format!("no node labeled {label}"))?;
        let k: usize = occ
            .trim()
            .parse()
            .map_err(|_| format!("bad occurrence in {part}"))?;
        generators.push((color, k));
    }
    let mask = h
        .ideal_from_generators(&generators)
        .map_err(|e| e.to_string())?;
    Ok(h.ideal_to_element(mask))
}

fn cmd_enumerate(args: EnumerateArgs) -> Result<ExitCode, String> {
    let (data, lambda, _) = args.diagram.resolve()?;
    let strata = minuscule_strata(&data, &lambda, args.max_len, args.diagram.cominuscule);
    match args.format.as_str() {
        "tsv" => {
            println!("length\tcount\telements");
            for (d, level) in strata.iter().enumerate() {
                let words: Vec<String> = level.iter().map(|s| s.elem.display(&data)).collect();
                println!("{d}\t{}\t{}", level.len(), words.join(" "));
            }
        }
        "json" => {
            let rows: Vec<_> = strata
                .iter()
                .enumerate()
                .map(|(d, level)| {
                    json!({
                        "length": d,
                        "count": level.len(),
                        "elements": level.iter().map(|s| s.elem.display(&data)).collect::<Vec<_>>(),
                    })
                })
                .collect();
            println!("{}", serde_json::to_string_pretty(&rows).unwrap());
        }
        other => return Err(format!("unknown format {other}")),
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_coeff(args: CoeffArgs) -> Result<ExitCode, String> {
    let (data, lambda, _) = args.diagram.resolve()?;
    if args.words.len() + args.ideals.len() != 3 {
        return Err("exactly three elements are required (via --word/--ideal)".into());
    }

    // The heap hosting ideal-form elements: --ambient, or the last word.
    let ambient_word = match (&args.ambient, args.words.last()) {
        (Some(a), _) => parse_word(&data, a)?,
        (None, Some(w)) => parse_word(&data, w)?,
        (None, None) => return Err("--ambient is required when all elements are ideals".into()),
    };
    let ambient_heap =
        build_heap(&data, &lambda, &ambient_word.word).map_err(|e| e.to_string())?;

    let mut elements: Vec<WeylElement> = Vec::new();
    for w in &args.words {
        elements.push(parse_word(&data, w)?);
    }
    for i in &args.ideals {
        elements.push(parse_ideal(&data, &ambient_heap, i)?);
    }
    let (u, v, w) = (&elements[0], &elements[1], &elements[2]);
    if u.len() + v.len() != w.len() {
        return Err(format!(
            "lengths do not add: l(u)={} l(v)={} l(w)={}",
            u.len(),
            v.len(),
            w.len()
        ));
    }

    let h = build_heap(&data, &lambda, &w.word).map_err(|e| e.to_string())?;
    let full = h.full_mask();
    let (t, m, tm_int) = match (h.ideal_of_element(u), h.ideal_of_element(v)) {
        (Some(umask), Some(vmask)) => {
            let t = t_coeff(&h, umask, vmask, full);
            let m = m_coeff(&h, umask, vmask, full);
            let tm = minuscule::cartan::Rat::from_integer(t as i64) * m;
            (t, m, tm)
        }
        _ => (0, minuscule::cartan::Rat::from_integer(1), minuscule::cartan::Rat::from_integer(0)),
    };

    let budget = args.max_len.unwrap_or(w.len());
    let oracle = if w.len() <= budget {
        let ctx = SchubertContext::new(&data, &lambda, w.len());
        Some(minuscule::schubert::structure_constant(&ctx, u, v, w))
    } else {
        None
    };
    let agree = oracle.as_ref().map(|c| {
        tm_int.is_integer() && num_bigint::BigInt::from(*tm_int.numer()) == *c
    });

    match args.format.as_str() {
        "json" => {
            let mut obj = json!({
                "u": u.display(&data),
                "v": v.display(&data),
                "w": w.display(&data),
                "t": t,
                "m": m.to_string(),
                "tm": tm_int.to_string(),
            });
            if let Some(c) = &oracle {
                obj["c"] = json!(c.to_string());
                obj["agree"] = json!(agree.unwrap());
            }
            println!("{}", serde_json::to_string_pretty(&obj).unwrap());
        }
        "tsv" => {
            let c_str = oracle
                .as_ref()
                .map(|c| c.to_string())
                .unwrap_or_else(|| "-".into());
            println!("t\tm\ttm\tc");
            println!("{t}\t{m}\t{tm_int}\t{c_str}");
        }
        other => return Err(format!("unknown format {other}")),
    }

    if args.equivariant {
        let ctx = SchubertContext::new(&data, &lambda, u.len() + v.len());
        let mut table = LocalizationTable::new();
        for (z, p) in equivariant_expansion(&ctx, u, v, &mut table) {
            println!("{}\t{}", z.display(&data), p.render(&data));
        }
    }

    if agree == Some(false) {
        return Ok(ExitCode::FAILURE);
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_verify(args: VerifyArgs) -> Result<ExitCode, String> {
    let name = args
        .suite
        .or(args.suite_pos)
        .ok_or_else(|| "a suite name (or `all`) is required".to_string())?;
    if args.jobs > 0 {
        rayon::ThreadPoolBuilder::new()
            .num_threads(args.jobs)
            .build_global()
            .ok();
    }
    let names: Vec<&str> = if name == "all" {
        SUITE_NAMES.to_vec()
    } else {
        if !SUITE_NAMES.contains(&name.as_str()) {
            return Err(format!(
                "unknown suite {name}; known suites: {}",
                SUITE_NAMES.join(", ")
            ));
        }
        vec![SUITE_NAMES
            .iter()
            .find(|s| **s == name)
            .copied()
            .unwrap()]
    };
    use rayon::prelude::*;
    let mut reports: Vec<_> = names
        .par_iter()
        .map(|n| run_suite(n, args.seed).expect("known suite"))
        .collect();
    reports.sort_by(|a, b| a.name.cmp(&b.name));
    let mut failed = false;
    for r in &reports {
        println!("{}", r.summary());
        failed |= !r.ok();
    }
    Ok(if failed {
        ExitCode::FAILURE
    } else {
        ExitCode::SUCCESS
    })
}

fn heap_json(data: &CartanData, s: &StratumHeap) -> serde_json::Value {
    json!({
        "word": s.elem.display(data),
        "colors": s.heap.colors.iter().map(|&c| data.nodes[c as usize].clone()).collect::<Vec<_>>(),
        "covers": s.heap.covers(),
    })
}

fn cmd_export(args: ExportArgs) -> Result<ExitCode, String> {
    let (data, lambda, _) = args.diagram.resolve()?;
    let com = args.diagram.cominuscule;
    let render = |s: &StratumHeap| -> Result<String, String> {
        Ok(match args.format.as_str() {
            "dot" => s.heap.to_dot(),
            "json" => serde_json::to_string_pretty(&heap_json(&data, s)).unwrap(),
            "tsv" => {
                let mut out = String::from("element\tcolor\tcovers\n");
                for (e, &c) in s.heap.colors.iter().enumerate() {
                    let ups: Vec<String> = s
                        .heap
                        .covers()
                        .iter()
                        .filter(|(lo, _)| *lo == e)
                        .map(|(_, hi)| hi.to_string())
                        .collect();
                    out.push_str(&format!(
                        "{e}\t{}\t{}\n",
                        data.nodes[c as usize],
                        ups.join(",")
                    ));
                }
                out
            }
            other => return Err(format!("unknown format {other}")),
        })
    };

    if let Some(word_text) = &args.word {
        let w = parse_word(&data, word_text)?;
        let strata = minuscule_strata(&data, &lambda, w.len(), com);
        let s = strata
            .get(w.len())
            .and_then(|level| level.iter().find(|s| s.elem == w))
            .ok_or_else(|| format!("{word_text} is not a stratified element"))?;
        let text = render(s)?;
        match &args.out {
            Some(path) => std::fs::write(path, text).map_err(|e| e.to_string())?,
            None => print!("{text}"),
        }
        return Ok(ExitCode::SUCCESS);
    }

    let max_len = args
        .max_len
        .ok_or_else(|| "either --word or --max-len is required".to_string())?;
    let dir = args
        .out
        .ok_or_else(|| "bulk export requires --out directory".to_string())?;
    std::fs::create_dir_all(&dir).map_err(|e| e.to_string())?;
    let strata = minuscule_strata(&data, &lambda, max_len, com);
    let ext = args.format.as_str();
    for s in strata.get(max_len).map(Vec::as_slice).unwrap_or(&[]) {
        let name: Vec<String> = s
            .elem
            .word
            .iter()
            .map(|&i| data.nodes[i as usize].clone())
            .collect();
        let path = dir.join(format!("heap-{}.{ext}", name.join("-")));
        let mut f = std::fs::File::create(&path).map_err(|e| e.to_string())?;
        f.write_all(render(s)?.as_bytes())
            .map_err(|e| e.to_string())?;
    }
    Ok(ExitCode::SUCCESS)
}
