use num_bigint::BigInt;
use num_traits::Zero;

use dscat_core::dyck::{catalan_number, enumerate_dyck};
use dscat_core::face::{self, ds_matrix, f_to_h, g_to_h, h_to_f, h_to_g, validate};
use dscat_core::linalg::for_each_subset;
use dscat_core::matroid::{LabelSet, Matroid};
use dscat_core::positroid::{
    decorated_permutation, even_closed_form, grassmann_necklace, necklace_exchange_map, odd_closed_form,
    DecoratedPermutation, FixedPoint,
};
use dscat_core::reconstruct::{
    dehn_sommerville_bases, main_theorem_sides, reconstruct, PartialFAssignment, ReconstructError,
};
use dscat_core::routing::{ds_basis_predicate, DsGraph, RoutingError};
use dscat_core::{FVector, GVector, HVector};

use crate::payload::*;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Method {
    Minors,
    Routing,
    Dyck,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Kind {
    F,
    H,
    G,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum MatrixFormat {
    Json,
    Csv,
}

pub type Outcome = Result<String, ErrorPayload>;

pub fn error(kind: &str, message: impl Into<String>) -> ErrorPayload {
    ErrorPayload {
        error: ErrorBody {
            kind: kind.into(),
            message: message.into(),
            ambiguity: None,
        },
    }
}

fn face_error(e: face::FaceError) -> ErrorPayload {
    error("InvalidVector", e.to_string())
}

fn routing_error(e: RoutingError) -> ErrorPayload {
    let kind = match e {
        RoutingError::BadCardinality { .. } => "BadCardinality",
        RoutingError::BadSinks(..) => "BadLabels",
    };
    error(kind, e.to_string())
}

fn reconstruct_error(e: ReconstructError) -> ErrorPayload {
    let message = e.to_string();
    match e {
        ReconstructError::NotADSBasis(a) => ErrorPayload {
            error: ErrorBody {
                kind: "NotADSBasis".into(),
                message,
                ambiguity: Some(Box::new(AmbiguityPayload {
                    labels: a.labels.clone(),
                    determinant: (&a.determinant).into(),
                    consistent: a.consistent,
                    polytopal: a.polytopal,
                    completions: a.completions.iter().map(|f| exact_vec(f.entries())).collect(),
                })),
            },
        },
        ReconstructError::WrongArity { .. } => error("WrongArity", message),
        ReconstructError::InconsistentConvention(_) => error("InconsistentConvention", message),
        ReconstructError::LabelOutOfRange { .. } => error("LabelOutOfRange", message),
        ReconstructError::DuplicateLabel(_) => error("DuplicateLabel", message),
    }
}

fn ds(d: usize) -> Matroid {
    Matroid::from_matrix(&ds_matrix::<BigInt>(d)).expect("M_d has full row rank")
}

fn column_label(j: usize) -> String {
    format!("f_{}", j as isize - 2)
}

pub fn matrix(d: usize, format: MatrixFormat) -> Outcome {
    let m = ds_matrix::<BigInt>(d);
    let row_labels: Vec<String> = (0..m.rows()).map(|i| format!("g_{i}")).collect();
    let column_labels: Vec<String> = (1..=m.cols()).map(column_label).collect();
    Ok(match format {
        MatrixFormat::Json => to_json(&MatrixPayload {
            d,
            row_labels,
            column_labels,
            rows: m.to_rows().iter().map(exact_vec).collect(),
        }),
        MatrixFormat::Csv => {
            let mut out = format!("row,{}\n", column_labels.join(","));
            for (label, row) in row_labels.iter().zip(m.to_rows()) {
                let cells: Vec<String> = row.iter().map(ToString::to_string).collect();
                out += &format!("{label},{}\n", cells.join(","));
            }
            out
        }
    })
}

pub fn bases_by(d: usize, method: Method) -> Vec<LabelSet> {
    match method {
        Method::Minors => ds(d).bases().to_vec(),
        Method::Dyck => dehn_sommerville_bases(d),
        Method::Routing => {
            let g = DsGraph::new(d);
            let mut out = Vec::new();
            for_each_subset(d + 1, g.source_count(), |s| {
                let s: Vec<usize> = s.iter().map(|i| i + 1).collect();
                if g.routing_exists(&s).expect("subset has the right size") {
                    out.push(s);
                }
            });
            out
        }
    }
}

pub fn bases(d: usize, method: Method, count_only: bool) -> Outcome {
    let list = bases_by(d, method);
    let name = format!("{method:?}").to_lowercase();
    Ok(to_json(&BasesPayload {
        d,
        method: name,
        count: list.len(),
        bases: (!count_only).then_some(list),
    }))
}

pub fn reconstruct_cmd(d: usize, known: &[(usize, BigInt)]) -> Outcome {
    let p = PartialFAssignment::new(d, known.iter().cloned()).map_err(reconstruct_error)?;
    let r = reconstruct(&p).map_err(reconstruct_error)?;
    Ok(to_json(&ReconstructPayload {
        d,
        basis: r.basis_used.clone(),
        f: exact_vec(r.f.entries()),
        h: exact_vec(r.h.entries()),
        g: exact_vec(r.g.entries()),
        flags: FlagsPayload {
            integral: r.flags.integral,
            nonnegative: r.flags.nonnegative,
            m_sequence: r.flags.m_sequence,
        },
    }))
}

pub fn transform(from: Kind, d: Option<usize>, values: Vec<BigInt>) -> Outcome {
    let (f, h, g) = match from {
        Kind::F => {
            let f = FVector::new(values).map_err(face_error)?;
            let h = f_to_h(&f);
            let g = h_to_g(&h);
            (f, h, g)
        }
        Kind::H => {
            let h = HVector::new(values).map_err(face_error)?;
            (h_to_f(&h), h.clone(), h_to_g(&h))
        }
        Kind::G => {
            let d = d.ok_or_else(|| error("MissingDimension", "--d is required when converting from a g-vector"))?;
            let g = GVector::new(d, values).map_err(face_error)?;
            let h = g_to_h(&g);
            (h_to_f(&h), h, g)
        }
    };
    if let Some(d) = d {
        if d != f.dim() {
            return Err(error(
                "DimensionMismatch",
                format!("--d {d} but the vector has dimension {}", f.dim()),
            ));
        }
    }
    Ok(to_json(&VectorsPayload {
        d: f.dim(),
        f: exact_vec(f.entries()),
        h: exact_vec(h.entries()),
        g: exact_vec(g.entries()),
    }))
}

pub fn validate_cmd(values: Vec<BigInt>) -> Outcome {
    let f = FVector::new(values).map_err(face_error)?;
    let v = validate(&f);
    let h = f_to_h(&f);
    let g = h_to_g(&h);
    Ok(to_json(&ValidatePayload {
        d: f.dim(),
        f: exact_vec(f.entries()),
        h: exact_vec(h.entries()),
        g: exact_vec(g.entries()),
        nonnegative: v.nonnegative,
        dehn_sommerville: v.dehn_sommerville,
        m_sequence: v.m_sequence,
    }))
}

pub fn is_basis(d: usize, set: Vec<usize>) -> Outcome {
    let predicate = ds_basis_predicate(&set, d).map_err(routing_error)?;
    let routing = DsGraph::new(d).routing_exists(&set).map_err(routing_error)?;
    let cols: Vec<usize> = set.iter().map(|j| j - 1).collect();
    let det = ds_matrix::<BigInt>(d)
        .select_columns(&cols)
        .determinant()
        .expect("square selection");
    Ok(to_json(&IsBasisPayload {
        d,
        is_basis: !det.is_zero(),
        determinant: det.into(),
        set,
        routing,
        predicate,
    }))
}

pub fn catalan(n: usize) -> Outcome {
    let paths = enumerate_dyck(n)
        .into_iter()
        .map(|p| DyckPayload {
            word: p.to_string(),
            upsteps: p.upsteps().to_vec(),
        })
        .collect();
    Ok(to_json(&CatalanPayload {
        n,
        count: catalan_number(n).into(),
        paths,
    }))
}

fn perm_entries(p: &DecoratedPermutation) -> Vec<PermEntry> {
    (1..=p.one_line().len())
        .map(|i| match p.decoration(i) {
            Some(FixedPoint::Coloop) => PermEntry::Fixed {
                fixed: FixedKind::Coloop,
            },
            Some(FixedPoint::Loop) => PermEntry::Fixed { fixed: FixedKind::Loop },
            None => PermEntry::Image(p.apply(i)),
        })
        .collect()
}

pub fn positroid(d: usize) -> Outcome {
    let m = ds(d);
    let necklace = grassmann_necklace(&m);
    let perm = decorated_permutation(&m);
    let closed = if d.is_multiple_of(2) {
        even_closed_form(d / 2)
    } else {
        odd_closed_form(d.div_ceil(2))
    };
    Ok(to_json(&PositroidPayload {
        d,
        ground: m.ground_size(),
        necklace: necklace.sets().to_vec(),
        decorated_permutation: perm_entries(&perm),
        exchange_map: perm_entries(&necklace_exchange_map(&necklace)),
        display: perm.to_string(),
        matches_closed_form: perm == closed,
    }))
}

pub fn check(d_min: usize, d_max: usize) -> Outcome {
    if d_min > d_max {
        return Err(error("EmptyRange", format!("--d-min {d_min} exceeds --d-max {d_max}")));
    }
    let oracles: Vec<OracleRow> = (d_min..=d_max)
        .map(|d| {
            let m = ds_matrix::<BigInt>(d);
            let g = DsGraph::new(d);
            let (mut subsets, mut bases, mut agree) = (0, 0, true);
            for_each_subset(d + 1, m.rows(), |cols| {
                let labels: Vec<usize> = cols.iter().map(|c| c + 1).collect();
                let minor = !m.select_columns(cols).determinant().expect("square").is_zero();
                let routed = g.routing_exists(&labels).expect("right size");
                let predicate = ds_basis_predicate(&labels, d).expect("right size");
                agree &= minor == routed && routed == predicate;
                subsets += 1;
                bases += usize::from(minor);
            });
            OracleRow {
                d,
                subsets,
                bases,
                agree,
            }
        })
        .collect();
    let n_min = d_min.div_ceil(2).max(1);
    let n_max = d_max.div_ceil(2).max(1);
    let main_theorem: Vec<TheoremRow> = (n_min..=n_max)
        .map(|n| {
            let (even, odd) = main_theorem_sides(n);
            TheoremRow {
                n,
                holds: even.0.equal_as_labeled(&even.1) && odd.0.equal_as_labeled(&odd.1),
            }
        })
        .collect();
    let bad_d: Vec<usize> = oracles.iter().filter(|r| !r.agree).map(|r| r.d).collect();
    let bad_n: Vec<usize> = main_theorem.iter().filter(|r| !r.holds).map(|r| r.n).collect();
    if !bad_d.is_empty() || !bad_n.is_empty() {
        return Err(error(
            "CheckFailed",
            format!("oracles disagree for d in {bad_d:?}; deletion identity fails for n in {bad_n:?}"),
        ));
    }
    Ok(to_json(&CheckPayload {
        d_min,
        d_max,
        oracles,
        main_theorem,
        ok: true,
    }))
}

pub fn route(d: usize, sinks: Vec<usize>, draw: bool) -> Outcome {
    let g = DsGraph::new(d);
    let routing = g.routing(&sinks).map_err(routing_error)?;
    if draw {
        return Ok(g.render(routing.as_ref()));
    }
    let paths = routing
        .map(|r| {
            r.paths
                .into_iter()
                .map(|p| PathPayload {
                    source: p.source,
                    sink: p.sink,
                    nodes: p.nodes.into_iter().map(|(x, y)| [x, y]).collect(),
                })
                .collect()
        })
        .unwrap_or_default();
    Ok(to_json(&RoutePayload {
        d,
        flow: g.max_disjoint_paths(&sinks),
        routable: !Vec::is_empty(&paths),
        sinks,
        paths,
    }))
}
