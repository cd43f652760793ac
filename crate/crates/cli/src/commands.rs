use std::path::PathBuf;
use std::process::ExitCode;

use hyperrect::arithmetic::{
    ap_capture_rectangle, embed_integers, rects_to_d_aps, rects_to_pow2_aps, van_der_corput,
    DifferenceSet, ExplicitSet, FiniteAP, Powers, Primes,
};
use hyperrect::construction::{
    build_gcg, build_hkc, find_monochromatic_edge, Limits, OddCycleProvider, RandomSearchConfig,
    RandomSearchProvider,
};
use hyperrect::geometry::{
    dominance_hasse, emit_svg, format_rational, incidence_hypergraph, monochromatic_increasing_path,
    Layout, Realization, Realizer, SvgStyle, Variant,
};
use hyperrect::hypergraph::{chromatic_number_with_budget, hypergraph_girth, Coloring};
use hyperrect::selftest;
use hyperrect::Error;
use num_bigint::BigUint;
use num_traits::Signed;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use crate::io::{
    emit, load_hypergraph, load_points, load_realization, load_staged, parse_int, parse_ints,
    pretty, read_json, read_text,
};
use crate::{ApMode, Cli, CliResult, Command, ConstructKind, DifferenceSetArg, LayoutArg, ProviderArg};

pub fn run(cli: &Cli) -> CliResult<ExitCode> {
    let g = &cli.global;
    let limits = Limits {
        max_vertices: g.max_vertices,
    };
    match &cli.command {
        Command::Construct { kind } => construct(kind, limits, g.seed, g.node_budget)?,
        Command::Realize {
            input,
            nested,
            sample,
            out,
            svg,
        } => {
            let s = load_staged(input, limits)?;
            let variant = if *nested { Variant::Nested } else { Variant::Plain };
            let rz = Realizer::new(&s, variant)?;
            let real = match sample {
                Some(count) => rz.finish_sampled(*count, g.seed)?,
                None => rz.finish()?,
            };
            emit(out.as_ref(), &pretty(&real.to_json())?)?;
            if let Some(path) = svg {
                emit(Some(path), &emit_svg(&real, &SvgStyle::default())?)?;
            }
        }
        Command::Verify {
            realization,
            hypergraph,
        } => {
            let h = load_hypergraph(hypergraph, limits)?;
            let real = load_realization(realization)?.into_realization(h.base().clone())?;
            real.verify()?;
            emit(None, &pretty(&json!({"verified": true, "edges": real.rects.len()}))?)?;
        }
        Command::ToAps {
            input,
            mode,
            difference_set,
            differences,
            out,
        } => {
            let real = realization_from_geometry(input)?;
            let doc = match mode {
                ApMode::Pow2 => rects_to_pow2_aps(&real)?.to_json(),
                ApMode::General => {
                    let set = difference_set_for(*difference_set, differences.as_ref())?;
                    rects_to_d_aps(&real, set.as_ref())?.realization.to_json()
                }
            };
            emit(out.as_ref(), &pretty(&doc)?)?;
        }
        Command::ApCapture {
            set,
            start,
            difference,
            length,
        } => {
            let v = parse_ints(set)?;
            let e = embed_integers(&v)?;
            let ap = FiniteAP::new(
                parse_int(start)? + &e.offset,
                parse_int(difference)?,
                parse_int(length)?,
            )?;
            let r = ap_capture_rectangle(&ap, &e.values)?;
            let captured: Vec<String> = e
                .points
                .iter()
                .zip(&e.values)
                .filter(|(p, _)| r.contains(p))
                .map(|(_, n)| (num_bigint::BigInt::from(n.clone()) - &e.offset).to_string())
                .collect();
            let rect: Vec<String> = [&r.x_lo, &r.x_hi, &r.y_lo, &r.y_hi]
                .into_iter()
                .map(format_rational)
                .collect();
            let doc = json!({"offset": e.offset.to_string(), "rect": rect, "captured": captured});
            emit(None, &pretty(&doc)?)?;
        }
        Command::Chromatic { input } => {
            let h = load_hypergraph(input, limits)?;
            let chi = chromatic_number_with_budget(h.base(), g.node_budget)?;
            emit(None, &pretty(&json!({"chromatic_number": chi}))?)?;
        }
        Command::Girth { input } => {
            let h = load_hypergraph(input, limits)?;
            emit(None, &pretty(&hypergraph_girth(h.base()))?)?;
        }
        Command::FindMono {
            input,
            coloring,
            colors,
        } => {
            let s = load_staged(input, limits)?;
            let col = match coloring {
                Some(path) => read_json(path)?,
                None => {
                    let mut rng = ChaCha8Rng::seed_from_u64(g.seed);
                    let palette = (*colors).max(1);
                    Coloring::new(palette, (0..s.n()).map(|_| rng.random_range(0..palette)).collect())?
                }
            };
            let found = find_monochromatic_edge(&s, &col)?;
            let doc = json!({
                "edge": found.edge,
                "color": found.color,
                "vertices": s.base().edge(found.edge),
            });
            emit(None, &pretty(&doc)?)?;
        }
        Command::Hasse { points } => {
            let pts = load_points(points)?;
            let h = dominance_hasse(&pts)?;
            emit(None, &pretty(&h)?)?;
        }
        Command::MonoPath { points, coloring, k } => {
            let pts = load_points(points)?;
            let col: Coloring = read_json(coloring)?;
            let path = monochromatic_increasing_path(&pts, &col, *k)?;
            emit(None, &pretty(&json!({"path": path}))?)?;
        }
        Command::Vdc { n } => {
            let n = parse_int(n)?;
            if n.is_negative() {
                return Err(Error::InvalidParameter("n must be nonnegative".into()));
            }
            let n: BigUint = n.to_biguint().expect("nonnegative");
            println!("{}", format_rational(&van_der_corput(&n)));
        }
        Command::Embed { set } => {
            let e = embed_integers(&parse_ints(set)?)?;
            let points: Vec<[String; 2]> = e
                .points
                .iter()
                .map(|p| [format_rational(&p.x), format_rational(&p.y)])
                .collect();
            emit(None, &pretty(&json!({"offset": e.offset.to_string(), "points": points}))?)?;
        }
        Command::Svg {
            realization,
            layout,
            coloring,
            highlight,
            out,
        } => {
            let real = realization_from_geometry(realization)?;
            let vertex_colors = match coloring {
                Some(path) => Some(read_json::<Coloring>(path)?.colors().to_vec()),
                None => None,
            };
            let style = SvgStyle {
                layout: match layout {
                    LayoutArg::Rank => Layout::Rank,
                    LayoutArg::Exact => Layout::Exact,
                },
                vertex_colors,
                highlight: highlight.clone(),
                ..SvgStyle::default()
            };
            emit(out.as_ref(), &emit_svg(&real, &style)?)?;
        }
        Command::Selftest { only } => {
            let ids: Vec<u32> = if only.is_empty() {
                selftest::CRITERIA.iter().map(|c| c.0).collect()
            } else {
                only.clone()
            };
            let mut ok = true;
            for id in ids {
                let report = selftest::run_criterion(id)?;
                println!("{}", report.line());
                ok &= report.passed;
            }
            if !ok {
                return Ok(ExitCode::from(1));
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn construct(kind: &ConstructKind, limits: Limits, seed: u64, node_budget: u64) -> CliResult<()> {
    let (s, out) = match kind {
        ConstructKind::Hkc { k, c, out } => (build_hkc(*k, *c, limits)?, out),
        ConstructKind::Gcg {
            c,
            g,
            provider,
            trials,
            out,
        } => {
            let s = match provider {
                ProviderArg::OddCycle => build_gcg(*c, *g, &mut OddCycleProvider, limits)?,
                ProviderArg::Random => {
                    let mut p = RandomSearchProvider::new(RandomSearchConfig {
                        seed,
                        trials: *trials,
                        node_budget,
                        ..RandomSearchConfig::default()
                    });
                    build_gcg(*c, *g, &mut p, limits)?
                }
            };
            (s, out)
        }
    };
    emit(out.as_ref(), &pretty(&s.to_json())?)
}

/// A realization whose hypergraph is read off its own rectangles.
fn realization_from_geometry(path: &PathBuf) -> CliResult<Realization> {
    let doc = load_realization(path)?;
    let points = doc.points()?;
    let rects = doc.rects()?;
    let hypergraph = incidence_hypergraph(&points, &rects)?.hypergraph;
    Ok(Realization {
        points,
        rects,
        hypergraph,
    })
}

fn difference_set_for(arg: DifferenceSetArg, file: Option<&PathBuf>) -> CliResult<Box<dyn DifferenceSet>> {
    Ok(match arg {
        DifferenceSetArg::Primes => Box::new(Primes),
        DifferenceSetArg::Pow2 => Box::new(Powers { base: 2 }),
        DifferenceSetArg::Pow3 => Box::new(Powers { base: 3 }),
        DifferenceSetArg::File => {
            let path = file.ok_or_else(|| {
                Error::InvalidParameter("--difference-set file needs --differences".into())
            })?;
            let text = read_text(path)?;
            let items: Vec<String> = text
                .split(|c: char| c == ',' || c.is_whitespace())
                .filter(|s| !s.is_empty())
                .map(str::to_string)
                .collect();
            Box::new(ExplicitSet::new(parse_ints(&items)?)?)
        }
    })
}
