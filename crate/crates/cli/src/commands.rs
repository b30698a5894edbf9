use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use cdv_core::cdv::{
    bipartite_kernel_basis, bipartite_subset, build_bipartite_operator, build_sap_witness,
    build_shift_operator, check_sap, same_span, verify_q1_counterexample, verify_sap_violation,
    SapOutcome,
};
use cdv_core::groups::{coset_enumerate, named_presentation, FiniteGroup, Letter};
use cdv_core::linalg::poly_expand_product;
use cdv_core::maps::{counterexample_range, heawood_gamma};
use cdv_core::{
    CombinatorialMap, Inertia, IntPolynomial, Presentation, QuadScalar, SchrodingerOperator,
    SimpleGraph, Word,
};
use serde_json::{json, Value};
use thiserror::Error;

use crate::report::Recorder;

/// Problems with the command line or input files. These stop a command
/// before any report is produced.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("cannot read {path}: {source}")]
    Read {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("cannot write {path}: {source}")]
    Write {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("{path}: {message}")]
    Parse { path: PathBuf, message: String },
    #[error("invalid argument: {0}")]
    Argument(String),
    #[error("operator does not match graph: {0}")]
    Mismatch(String),
}

/// The shift that makes `lambda I - A` a CdV matrix of the genus-10 graph.
pub const GENUS10_SHIFT: &str = "1 + sqrt(7)";

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|source| CliError::Read {
        path: path.to_path_buf(),
        source,
    })
}

pub fn write(path: &Path, text: &str) -> Result<(), CliError> {
    std::fs::write(path, text).map_err(|source| CliError::Write {
        path: path.to_path_buf(),
        source,
    })
}

/// Reads a graph as JSON (`{"n": .., "edges": [[u, v], ..]}`) or as an edge
/// list, chosen by the first character.
pub fn read_graph(path: &Path) -> Result<SimpleGraph, CliError> {
    let text = read(path)?;
    let parsed = if text.trim_start().starts_with('{') {
        SimpleGraph::from_json(&text)
    } else {
        SimpleGraph::from_edge_list(&text)
    };
    parsed.map_err(|e| CliError::Parse {
        path: path.to_path_buf(),
        message: e.to_string(),
    })
}

pub fn read_operator(path: &Path) -> Result<SchrodingerOperator, CliError> {
    SchrodingerOperator::from_json(&read(path)?).map_err(|e| CliError::Parse {
        path: path.to_path_buf(),
        message: e.to_string(),
    })
}

/// A built-in name, a file, or the presentation text itself, tried in that
/// order.
pub fn resolve_presentation(arg: &str) -> Result<Presentation, CliError> {
    if let Some(p) = named_presentation(arg) {
        return Ok(p);
    }
    let path = Path::new(arg);
    if path.is_file() {
        return read(path)?
            .parse()
            .map_err(|e: cdv_core::GroupError| CliError::Parse {
                path: path.to_path_buf(),
                message: e.to_string(),
            });
    }
    arg.parse()
        .map_err(|e: cdv_core::GroupError| CliError::Argument(format!("presentation: {e}")))
}

pub fn parse_shift(text: &str) -> Result<QuadScalar, CliError> {
    text.parse()
        .map_err(|e| CliError::Argument(format!("scalar {text:?}: {e}")))
}

fn err(e: impl std::fmt::Display) -> String {
    e.to_string()
}

fn inertia_json(i: &Inertia) -> Value {
    json!({
        "negatives": i.negatives,
        "zeros": i.zeros,
        "positives": i.positives,
    })
}

/// Reports a SAP check on stderr every tenth of the way.
fn heartbeat(enabled: bool) -> impl FnMut(usize, usize) {
    let mut next = 0usize;
    move |done, total| {
        if !enabled || total == 0 {
            return;
        }
        let tenth = done * 10 / total;
        if tenth >= next {
            eprintln!("[cdv] sap: {done}/{total} pivots");
            next = tenth + 1;
        }
    }
}

fn run_sap(op: &SchrodingerOperator, progress: bool) -> Result<SapOutcome, String> {
    let mut beat = heartbeat(progress);
    check_sap(op, Some(&mut beat)).map_err(err)
}

pub struct Genus10Args {
    pub skip_sap: bool,
    pub presentation: String,
    pub max_cosets: usize,
}

/// The full certificate for the genus-10 triangulation: group, map,
/// spectrum, operator, SAP, and the comparison with the Heawood bound.
pub fn genus10(rec: &mut Recorder, args: &Genus10Args) -> Result<(), CliError> {
    let p = resolve_presentation(&args.presentation)?;
    if p.generators().len() != 2 {
        return Err(CliError::Argument(format!(
            "presentation needs generators y, z; found {}",
            p.generators().len()
        )));
    }
    rec.input("presentation", p.to_string());
    rec.input("max_cosets", args.max_cosets);
    rec.input("skip_sap", args.skip_sap);
    rec.input("shift", GENUS10_SHIFT);

    let y = Word(vec![Letter::new(0, false)]);
    let z = Word(vec![Letter::new(1, false)]);
    let yz = y.concat(&z);
    let named = [
        (z.clone(), 54usize, 8usize),
        (yz.clone(), 216, 2),
        (y.clone(), 144, 3),
    ];

    let group = rec.run("group", || {
        let g = FiniteGroup::realize(&p, args.max_cosets).map_err(err)?;
        let mut indices = BTreeMap::new();
        let mut orders = BTreeMap::new();
        for (w, _, _) in &named {
            let t = coset_enumerate(&p, std::slice::from_ref(w), args.max_cosets).map_err(err)?;
            indices.insert(p.render_word(w), t.count());
            orders.insert(p.render_word(w), g.element_order(w));
        }
        let data = json!({
            "order": g.order(),
            "subgroup_indices": indices,
            "element_orders": orders,
        });
        Ok(((g, indices, orders), data))
    });
    if let Some((g, indices, orders)) = &group {
        rec.check("group", "group order", 432, g.order());
        for (w, index, order) in &named {
            let name = p.render_word(w);
            rec.check(
                "group",
                &format!("index of <{name}>"),
                index,
                indices[&name],
            );
            rec.check("group", &format!("order of {name}"), order, orders[&name]);
        }
    }

    let map = group.and_then(|(g, _, _)| {
        rec.run("map", || {
            let m = CombinatorialMap::from_rotary_group(&g).map_err(err)?;
            let r = m.report().map_err(err)?;
            let graph = m.underlying_graph();
            let data = json!({
                "report": r,
                "graph": {
                    "vertices": graph.vertex_count(),
                    "edges": graph.edge_count(),
                    "connected": graph.is_connected(),
                    "regular_degree": graph.regular_degree(),
                },
            });
            Ok(((m, r), data))
        })
    });
    let graph = map.map(|(m, r)| {
        let g = m.underlying_graph().clone();
        rec.check(
            "map",
            "vertices, edges, faces",
            "54, 216, 144",
            format!("{}, {}, {}", r.v, r.e, r.f),
        );
        rec.check("map", "Euler characteristic", -18, r.chi);
        rec.check("map", "orientable genus", 10, r.genus);
        rec.check("map", "type", "(3, 8)", format!("({}, {})", r.p, r.q));
        rec.check("map", "underlying graph connected", true, g.is_connected());
        let degree = g
            .regular_degree()
            .map_or("irregular".into(), |d| d.to_string());
        rec.check("map", "underlying graph regular degree", "8", degree);
        (g, r.chi)
    });

    let spectrum = graph.as_ref().and_then(|(g, _)| {
        rec.run("spectrum", || {
            let actual = g.adjacency_matrix().charpoly().map_err(err)?;
            let lin = IntPolynomial::linear_root;
            let expected = poly_expand_product(&[
                (lin(8), 1),
                (lin(-4), 2),
                (IntPolynomial::x(), 3),
                (lin(-1), 8),
                (lin(-3), 8),
                (IntPolynomial::from_i64(&[-6, -2, 1]), 16),
            ]);
            let data = json!({
                "charpoly": actual.to_string(),
                "factorization": "(x-8)(x+4)^2 x^3 (x+1)^8 (x+3)^8 (x^2-2x-6)^16",
            });
            Ok((actual == expected, data))
        })
    });
    if let Some(matches) = spectrum {
        rec.check(
            "spectrum",
            "charpoly equals the factorization",
            true,
            matches,
        );
    }

    let operator = match (&graph, spectrum) {
        (Some((g, _)), Some(_)) => rec.run("operator", || {
            let op = build_shift_operator(g, &parse_shift(GENUS10_SHIFT).map_err(err)?);
            op.check_sign_pattern().map_err(err)?;
            let inertia = op.inertia();
            let data = json!({
                "field_d": op.matrix().field_d(),
                "shift": GENUS10_SHIFT,
                "inertia": inertia_json(&inertia),
                "corank": op.corank(),
            });
            Ok((op, data))
        }),
        _ => None,
    };
    if let Some(op) = &operator {
        rec.check("operator", "inertia", "(1, 16, 37)", op.inertia());
        rec.check("operator", "corank", 16, op.corank());
    }

    let mut sap_certified = false;
    let progress = rec.progress();
    if let Some(op) = &operator {
        if args.skip_sap {
            rec.skip("sap", "--skip-sap");
        } else if let Some(out) = rec.run("sap", || {
            let out = run_sap(op, progress)?;
            let data = serde_json::to_value(&out).map_err(err)?;
            Ok((out, data))
        }) {
            sap_certified = out.holds;
            rec.check(
                "sap",
                "system size",
                "2862 x 1215",
                format!("{} x {}", out.rows, out.columns),
            );
            rec.check("sap", "rank", 1215, out.rank);
            rec.check("sap", "SAP holds", true, out.holds);
        }
    }

    if let (Some(op), Some((_, chi))) = (&operator, &graph) {
        let corank = op.corank() as u64;
        let chi = *chi;
        let bound = rec.run("bound", || {
            let gamma = heawood_gamma(chi, false).map_err(err)?;
            let range = counterexample_range(corank, chi).map_err(err)?;
            let data = json!({
                "mu_lower_bound": corank,
                "sap_certified": sap_certified,
                "heawood_gamma": gamma,
                "heawood_bound": gamma - 1,
                "counterexample_range": range,
            });
            Ok(((gamma, range), data))
        });
        if let Some((gamma, range)) = bound {
            let relation = if corank > gamma - 1 { ">" } else { "<=" };
            rec.check(
                "bound",
                "mu lower bound exceeds gamma(chi) - 1",
                "16 > 13",
                format!("{corank} {relation} {}", gamma - 1),
            );
            rec.check(
                "bound",
                "counterexample range",
                "[-28, -19]",
                match range.interval {
                    Some((lo, hi)) => format!("[{lo}, {hi}]"),
                    None => "empty".into(),
                },
            );
        }
    }
    Ok(())
}

/// Membership and SAP for an operator read from a file, checked against a
/// separately supplied graph.
pub fn sap(rec: &mut Recorder, graph_path: &Path, operator_path: &Path) -> Result<(), CliError> {
    let graph = read_graph(graph_path)?;
    let op = read_operator(operator_path)?;
    if graph.vertex_count() != op.size() {
        return Err(CliError::Mismatch(format!(
            "graph has {} vertices, operator has dimension {}",
            graph.vertex_count(),
            op.size()
        )));
    }
    if &graph != op.graph() {
        return Err(CliError::Mismatch("edge sets differ".into()));
    }
    rec.input("graph", graph_path.display().to_string());
    rec.input("operator", operator_path.display().to_string());
    rec.input("vertices", graph.vertex_count());
    rec.input("edges", graph.edge_count());
    rec.input("field_d", op.matrix().field_d());

    let membership = rec.run("membership", || {
        let pattern = op
            .check_sign_pattern()
            .map(|_| "ok".to_string())
            .unwrap_or_else(|e| e.to_string());
        let inertia = op.inertia();
        let data = json!({
            "sign_pattern": pattern,
            "inertia": inertia_json(&inertia),
            "corank": op.corank(),
        });
        Ok(((pattern, inertia), data))
    });
    if let Some((pattern, inertia)) = membership {
        rec.check("membership", "sign pattern of the graph", "ok", pattern);
        rec.check("membership", "negative eigenvalues", 1, inertia.negatives);
    }

    let progress = rec.progress();
    if let Some(out) = rec.run("sap", || {
        let out = run_sap(&op, progress)?;
        let mut data = serde_json::to_value(&out).map_err(err)?;
        if let Some(x) = &out.witness {
            let verified = verify_sap_violation(&op, x).is_ok();
            data["witness_verified"] = json!(verified);
        }
        Ok((out, data))
    }) {
        rec.check("sap", "SAP holds", true, out.holds);
    }
    Ok(())
}

pub struct BipartiteArgs {
    pub a: usize,
    pub b: usize,
    pub sa: usize,
    pub sb: usize,
    pub operator_out: Option<PathBuf>,
}

/// `eps I_S - A` on `K_{a,b}` with `S` the first `sa` vertices of side A
/// and the first `sb` of side B.
pub fn bipartite(rec: &mut Recorder, args: &BipartiteArgs) -> Result<(), CliError> {
    let BipartiteArgs { a, b, sa, sb, .. } = *args;
    if a == 0 || a > b || sa >= a || sb >= b {
        return Err(CliError::Argument(format!(
            "need 1 <= a <= b, sA < a and sB < b; got a = {a}, b = {b}, sA = {sa}, sB = {sb}"
        )));
    }
    rec.input("a", a);
    rec.input("b", b);
    rec.input("s_a", sa);
    rec.input("s_b", sb);
    let s = bipartite_subset(a, sa, sb);

    let construction = rec.run("construction", || {
        let op = build_bipartite_operator(a, b, &s).map_err(err)?;
        let data = serde_json::to_value(op.report()).map_err(err)?;
        Ok((op, data))
    });
    let Some(op) = construction else {
        return Ok(());
    };
    if let Some(path) = &args.operator_out {
        write(path, &op.operator.to_json())?;
    }
    let expected = a + b - 2 - s.len();
    rec.check(
        "construction",
        "corank a + b - 2 - |S|",
        expected,
        op.corank,
    );
    rec.check(
        "construction",
        "negative eigenvalues",
        1,
        op.operator.inertia().negatives,
    );

    if let Some(same) = rec.run("kernel", || {
        let basis = bipartite_kernel_basis(a, b, &s).map_err(err)?;
        let same = same_span(a + b, &basis, &op.operator.kernel_basis()).map_err(err)?;
        let vectors: Vec<Vec<String>> = basis
            .iter()
            .map(|v| v.iter().map(ToString::to_string).collect())
            .collect();
        Ok((
            same,
            json!({ "basis": vectors, "matches_matrix_kernel": same }),
        ))
    }) {
        rec.check("kernel", "explicit basis spans the kernel", true, same);
    }

    let progress = rec.progress();
    if let Some(out) = rec.run("sap", || {
        let out = run_sap(&op.operator, progress)?;
        let data = serde_json::to_value(&out).map_err(err)?;
        Ok((out, data))
    }) {
        // corank at most 2 forces SAP; beyond that the outcome is only reported
        if op.corank <= 2 {
            rec.check("sap", "SAP holds at corank <= 2", true, out.holds);
        }
    }
    Ok(())
}

/// The corank-4 operator on `K_{a,b}` that fails SAP, with its violating `X`.
pub fn witness(rec: &mut Recorder, a: usize, b: usize) -> Result<(), CliError> {
    rec.input("a", a);
    rec.input("b", b);
    let w = rec.run("construction", || {
        let w = build_sap_witness(a, b).map_err(err)?;
        let x: Vec<Vec<String>> = (0..w.x.rows())
            .map(|i| w.x.row(i).iter().map(ToString::to_string).collect())
            .collect();
        let data = json!({ "operator": w.construction.report(), "x": x });
        Ok((w, data))
    });
    let Some(w) = w else {
        return Ok(());
    };
    rec.check("construction", "corank", 4, w.construction.corank);

    let op = &w.construction.operator;
    if let Some(result) = rec.run("violation", || {
        let r = verify_sap_violation(op, &w.x)
            .map(|_| "verified".to_string())
            .unwrap_or_else(|e| e.to_string());
        Ok((r.clone(), json!({ "result": r })))
    }) {
        rec.check("violation", "X violates SAP", "verified", result);
    }

    let progress = rec.progress();
    if let Some(out) = rec.run("sap", || {
        let out = run_sap(op, progress)?;
        let data = serde_json::to_value(&out).map_err(err)?;
        Ok((out, data))
    }) {
        rec.check("sap", "rank check concurs: SAP fails", false, out.holds);
    }
    Ok(())
}

/// The graph none of whose CdV matrices has the all-ones eigenvector.
pub fn q1(rec: &mut Recorder) -> Result<(), CliError> {
    if let Some(r) = rec.run("q1", || {
        let r = verify_q1_counterexample();
        let data = serde_json::to_value(&r).map_err(err)?;
        Ok((r, data))
    }) {
        rec.check(
            "q1",
            "x^3 - 6x + 9 = (x + 3)(x^2 - 3x + 3) = -3(-x^3/3 + 2x - 3)",
            true,
            r.factorization_holds && r.scaled_form_holds,
        );
        rec.check("q1", "positive roots of x^3 - 6x + 9", 0, r.positive_roots);
        let grid = r
            .samples
            .iter()
            .all(|s| s.gap_matches_cubic && s.in_pattern && s.rank == 2 && !s.ones_is_eigenvector);
        rec.check("q1", "row sums differ on every sample", true, grid);
    }
    Ok(())
}

pub fn heawood(
    rec: &mut Recorder,
    chi: i64,
    klein: bool,
    mu_lower: Option<u64>,
) -> Result<(), CliError> {
    rec.input("chi", chi);
    rec.input("klein", klein);
    if let Some(mu) = mu_lower {
        rec.input("mu_lower", mu);
    }
    if let Some(gamma) = rec.run("gamma", || {
        let g = heawood_gamma(chi, klein).map_err(err)?;
        Ok((g, json!({ "gamma": g, "bound": g - 1 })))
    }) {
        if klein {
            rec.check("gamma", "Klein bottle value", 6, gamma);
        } else {
            let n = gamma as i64;
            let budget = 6 * (2 - chi);
            let extremal = (n - 3) * (n - 4) <= budget && (n - 2) * (n - 3) > budget;
            rec.check(
                "gamma",
                "gamma is the largest n with (n-3)(n-4) <= 6(2-chi)",
                true,
                extremal,
            );
        }
    }
    if let Some(mu) = mu_lower {
        if let Some(range) = rec.run("range", || {
            let r = counterexample_range(mu, chi).map_err(err)?;
            let data = serde_json::to_value(&r).map_err(err)?;
            Ok((r, data))
        }) {
            let beaten = range
                .table
                .iter()
                .filter(|(c, _)| range.interval.is_some_and(|(lo, hi)| (lo..=hi).contains(c)))
                .all(|&(_, g)| g - 1 < mu);
            rec.check(
                "range",
                "mu exceeds gamma - 1 on the whole range",
                true,
                beaten,
            );
        }
    }
    Ok(())
}

pub struct CosetArgs {
    pub presentation: String,
    pub subgroup: Vec<String>,
    pub max_cosets: usize,
    pub table: bool,
}

pub fn coset(rec: &mut Recorder, args: &CosetArgs) -> Result<(), CliError> {
    let p = resolve_presentation(&args.presentation)?;
    let words = args
        .subgroup
        .iter()
        .map(|w| p.parse_word(w))
        .collect::<Result<Vec<_>, _>>()
        .map_err(|e| CliError::Argument(format!("subgroup generator: {e}")))?;
    rec.input("presentation", p.to_string());
    rec.input(
        "subgroup",
        words.iter().map(|w| p.render_word(w)).collect::<Vec<_>>(),
    );
    rec.input("max_cosets", args.max_cosets);

    if let Some(t) = rec.run("enumerate", || {
        let t = coset_enumerate(&p, &words, args.max_cosets).map_err(err)?;
        let mut data = json!({ "index": t.count() });
        if args.table {
            let reps: Vec<String> = t
                .representatives()
                .iter()
                .map(|w| p.render_word(w))
                .collect();
            let columns: BTreeMap<String, Vec<usize>> = (0..p.generators().len())
                .map(|g| (p.generators()[g].clone(), t.column(Letter::new(g, false))))
                .collect();
            data["representatives"] = json!(reps);
            data["table"] = json!(columns);
        }
        Ok((t, data))
    }) {
        rec.check(
            "enumerate",
            "generators act as permutations",
            true,
            t.is_permutation_table(),
        );
        rec.check(
            "enumerate",
            "relators fix every coset",
            true,
            t.is_closed(&p),
        );
        let fixed = words.iter().all(|w| t.trace(0, w) == 0);
        rec.check(
            "enumerate",
            "subgroup generators fix the subgroup coset",
            true,
            fixed,
        );
    }
    Ok(())
}
