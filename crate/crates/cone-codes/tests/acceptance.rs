//! Acceptance criteria, one PASS/FAIL line each. Exits nonzero if any criterion fails.

mod common;

use std::process::ExitCode;
use std::time::Instant;

use cone_codes::chain::{kunneth_check, tensor, BasedComplex};
use cone_codes::cli::{self, ConeDocument, Document};
use cone_codes::constructions::{
    cyclic_repetition, dangling_repetition, layer_code, layer_distance_bound, random_chain_map_cone, random_complex,
    repetition, simpl_chain, steane, toric_code, weight_reduce, xxx_ziz, ConstructionError,
};
use cone_codes::css::{CssCode, Side, DEFAULT_DISTANCE_CAP};
use cone_codes::f2linalg::{BitMatrix, BitVec};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::{brute_force_distances, constructions, corpus, simplicial_corpus, Named};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn repetition_homology() -> Outcome {
    for l in 2..=6 {
        let cases: [(&str, BasedComplex, [usize; 2]); 3] = [
            ("R", repetition(l).map_err(|e| e.to_string())?, [1, 0]),
            ("cyclic R", cyclic_repetition(l).map_err(|e| e.to_string())?, [1, 1]),
            ("dangling R", dangling_repetition(l).map_err(|e| e.to_string())?, [0, 0]),
        ];
        for (name, c, expected) in cases {
            let b = c.betti().map_err(|e| e.to_string())?;
            ensure(b == expected, || format!("{name}({l}): H0/H1 = {}/{}, expected {expected:?}", b[0], b[1]))?;
        }
    }
    Ok("R, cyclic R, dangling R for L = 2..6".into())
}

fn kunneth_and_torus() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for pair in 0..50 {
        let pick = |rng: &mut ChaCha8Rng| {
            let len = rng.gen_range(1..=3);
            let dims: Vec<usize> = (0..len).map(|_| rng.gen_range(0..=6)).collect();
            random_complex(rng, &dims)
        };
        let c = pick(&mut rng);
        let d = pick(&mut rng);
        c.validate().map_err(|e| e.to_string())?;
        d.validate().map_err(|e| e.to_string())?;
        let r = kunneth_check(&c, &d).map_err(|e| e.to_string())?;
        ensure(r.ok(), || format!("pair {pair}: tensor betti {:?} vs predicted {:?}", r.tensor_betti, r.predicted))?;
    }
    let start = Instant::now();
    let t = toric_code(3);
    let p = t.parameters(DEFAULT_DISTANCE_CAP);
    let (bz, bx) = brute_force_distances(&t, 4);
    let elapsed = start.elapsed();
    ensure(p.k == 2 && p.d_z.value() == Some(3) && p.d_x.value() == Some(3), || format!("toric 3x3: {p:?}"))?;
    ensure(bz == Some(3) && bx == Some(3), || format!("toric 3x3 oracle: d_Z {bz:?}, d_X {bx:?}"))?;
    ensure(elapsed.as_secs_f64() < 10.0, || format!("toric 3x3 took {elapsed:?}"))?;
    Ok(format!("50 random pairs; toric 3x3 [[18,2,3]] in {:.2?}", elapsed))
}

fn boundary_toric() -> Outcome {
    for a in 2..=4 {
        for b in 2..=4 {
            let c = tensor(
                &repetition(a).map_err(|e| e.to_string())?,
                &repetition(b).map_err(|e| e.to_string())?.transpose_complex(),
            )
            .map_err(|e| e.to_string())?;
            let code = CssCode::from_complex(c).map_err(|e| e.to_string())?;
            let (dz, dx) = brute_force_distances(&code, 4);
            let fast = (code.distance(Side::Z, DEFAULT_DISTANCE_CAP), code.distance(Side::X, DEFAULT_DISTANCE_CAP));
            ensure(code.k() == 1 && dz == Some(b) && dx == Some(a), || {
                format!("R({a}) x R({b})^T: k = {}, d_Z = {dz:?}, d_X = {dx:?}", code.k())
            })?;
            ensure(fast == (Ok(Some(b)), Ok(Some(a))), || format!("R({a}) x R({b})^T: search gives {fast:?}"))?;
        }
    }
    Ok("k = 1, d_Z = b, d_X = a for 2 <= a, b <= 4".into())
}

fn cone_soundness() -> Outcome {
    let all = constructions();
    for (name, c) in &all {
        let total = c.assemble().map_err(|e| format!("{name}: {e}"))?;
        total.validate().map_err(|e| format!("{name}: {e}"))?;
        for &m in &c.regular_degrees {
            c.spec.check_regular(m).map_err(|e| format!("{name}: {e}"))?;
        }
    }
    Ok(format!("{} cones assemble and are regular where declared", all.len()))
}

fn k_preservation() -> Outcome {
    let all = constructions();
    for (name, c) in &all {
        let v = c.verify().map_err(|e| format!("{name}: {e}"))?;
        for (m, iso) in &v.isomorphisms {
            let cone_dim = v.total.homology(*m).map_err(|e| e.to_string())?.dim();
            let declared_dim = c.declared.homology(*m).map_err(|e| e.to_string())?.dim();
            ensure(cone_dim == declared_dim, || format!("{name}: H_{m} {cone_dim} vs declared {declared_dim}"))?;
            ensure(iso.rows() == iso.cols() && iso.rank() == iso.cols(), || format!("{name}: iso at {m} singular"))?;
        }
    }
    let complexes = simplicial_corpus();
    for (name, k) in &complexes {
        let c = cone_codes::constructions::barycentric_cone(k).map_err(|e| e.to_string())?;
        let total = c.assemble().map_err(|e| e.to_string())?.betti().map_err(|e| e.to_string())?;
        let base = simpl_chain(k).betti().map_err(|e| e.to_string())?;
        ensure(total == base, || format!("barycentric({name}): {total:?} vs {base:?}"))?;
    }
    Ok(format!("{} cones; barycentric on {} complexes", all.len(), complexes.len()))
}

fn lifts() -> Outcome {
    let mut classes = 0;
    for (name, c) in constructions() {
        let analysis = c.spec.analyze().map_err(|e| format!("{name}: {e}"))?;
        let total = analysis.total();
        for &m in &c.regular_degrees {
            let h = total.homology(m).map_err(|e| e.to_string())?;
            let dim = analysis.embedding_iso(m).map_err(|e| format!("{name}: {e}"))?.cols();
            let class_of = |coords: &BitVec| -> Result<BitVec, String> {
                let z = analysis.lift_class(m, coords).map_err(|e| format!("{name}: {e}"))?;
                ensure(total.diff(m).mul_vec(&z).is_zero(), || format!("{name}: lift at {m} is not a cycle"))?;
                h.project(total, &z).map_err(|e| format!("{name}: {e}"))
            };
            let basis: Vec<BitVec> = (0..dim).map(|j| class_of(&BitVec::unit(dim, j))).collect::<Result<_, _>>()?;
            for (j, p) in basis.iter().enumerate() {
                ensure(!p.is_zero(), || format!("{name}: lift of class {j} at {m} is trivial"))?;
                classes += 1;
            }
            for i in 0..dim {
                for j in i + 1..dim {
                    let sum = class_of(&BitVec::unit(dim, i).xor(&BitVec::unit(dim, j)))?;
                    ensure(sum == basis[i].xor(&basis[j]), || format!("{name}: lift not linear on ({i}, {j})"))?;
                    ensure(!sum.is_zero(), || format!("{name}: lift of class {i}+{j} is trivial"))?;
                }
            }
        }
    }
    Ok(format!("{classes} basis classes lift to nontrivial cycles; sums are linear"))
}

fn layer_bounds() -> Outcome {
    let mut checked = Vec::new();
    for Named { name, code } in corpus() {
        let w = code.weights();
        if w.w_z < 2 || w.w_x < 2 || code.k() == 0 {
            continue;
        }
        let Ok(bound) = layer_distance_bound(&code, DEFAULT_DISTANCE_CAP) else { continue };
        let layer = layer_code(&code).and_then(|c| c.code()).map_err(|e| e.to_string())?;
        let (Ok(Some(dz)), Ok(Some(dx))) = (
            layer.distance(Side::Z, DEFAULT_DISTANCE_CAP),
            layer.distance(Side::X, DEFAULT_DISTANCE_CAP),
        ) else {
            continue;
        };
        let (bz, bx) = (bound.z.expect("k > 0"), bound.x.expect("k > 0"));
        ensure(bz.satisfied_by(dz) && bx.satisfied_by(dx), || {
            format!("{name}: layer d_Z = {dz} vs {}/{}, d_X = {dx} vs {}/{}", bz.num, bz.den, bx.num, bx.den)
        })?;
        checked.push(name);
    }
    ensure(checked.iter().any(|n| n == "xxx/ziz"), || "xxx/ziz not within the cap".into())?;
    ensure(checked.len() >= 4, || format!("only {} inputs within the cap: {checked:?}", checked.len()))?;
    Ok(format!("{} inputs: {}", checked.len(), checked.join(", ")))
}

fn weight_bounds() -> Outcome {
    let mut failures = Vec::new();
    let mut checked = 0;
    let mut skipped = 0;
    let mut inputs = vec![Named { name: "steane".into(), code: steane() }];
    inputs.extend(corpus().into_iter().filter(|n| n.name != "steane"));
    for Named { name, code } in inputs {
        match weight_reduce(&code) {
            Ok(r) => {
                checked += 1;
                if let Err(e) = r.check() {
                    failures.push(format!("{name}: {e}"));
                }
            }
            Err(ConstructionError::Unreasonable(_)) if name != "steane" => skipped += 1,
            Err(e) => failures.push(format!("{name}: {e}")),
        }
    }
    if failures.is_empty() {
        Ok(format!("{checked} reasonable codes within (10, 42, 3, 4) with k preserved; {skipped} unreasonable skipped"))
    } else {
        Err(format!("{} of {checked} reasonable codes violate bounds; {}", failures.len(), failures.join(" | ")))
    }
}

fn rank_oracle(source: &BasedComplex, target: &BasedComplex, maps: &[BitMatrix]) -> Vec<usize> {
    let top = source.top_degree() + 1;
    let dim = |i: usize| target.dim(i) + if i >= 1 { source.dim(i - 1) } else { 0 };
    // Cone degree i is source_{i-1} over target_i.
    let diff = |i: usize| -> BitMatrix {
        let mut entries = Vec::new();
        let src_rows = if i >= 2 { source.dim(i - 2) } else { 0 };
        if i >= 2 {
            entries.extend(source.diff_ref(i - 1).entries());
        }
        entries.extend(maps[i - 1].entries().map(|(r, c)| (src_rows + r, c)));
        if i <= target.top_degree() {
            let shift = source.dim(i - 1);
            entries.extend(target.diff_ref(i).entries().map(|(r, c)| (src_rows + r, shift + c)));
        }
        BitMatrix::from_entries(dim(i - 1), dim(i), entries)
    };
    (0..=top)
        .map(|i| {
            let out = if i == 0 { 0 } else { diff(i).rank() };
            let inc = if i == top { 0 } else { diff(i + 1).rank() };
            dim(i) - out - inc
        })
        .collect()
}

fn chain_map_oracle() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for trial in 0..30 {
        let mut dims = || -> Vec<usize> { (0..3).map(|_| rng.gen_range(0..=4)).collect() };
        let (sd, td) = (dims(), dims());
        let c = random_chain_map_cone(&mut rng, &sd, &td).map_err(|e| e.to_string())?;
        let assembled = c.spec.assemble().map_err(|e| e.to_string())?.betti().map_err(|e| e.to_string())?;
        let oracle = rank_oracle(&c.source, &c.target, &c.maps);
        ensure(assembled == oracle, || format!("trial {trial}: assemble {assembled:?} vs oracle {oracle:?}"))?;
    }
    Ok("30 random chain-map cones".into())
}

fn artifacts(threads: usize) -> Vec<u8> {
    let mut out = Vec::new();
    for (name, c) in constructions() {
        out.extend(name.as_bytes());
        out.extend(Document::Cone(ConeDocument::from_construction(&c)).to_json().into_bytes());
    }
    for Named { name, code } in corpus() {
        out.extend(name.as_bytes());
        out.extend(serde_json::to_vec(&code.parameters_with_threads(DEFAULT_DISTANCE_CAP, threads)).expect("params"));
    }
    for code in [steane(), xxx_ziz()] {
        let r = weight_reduce(&code).expect("reasonable");
        out.extend(Document::Complex(cli::ComplexDocument::from_complex(&r.output)).to_json().into_bytes());
    }
    let mut err = Vec::new();
    for args in [
        vec!["cone-codes", "build", "honeycomb", "--size", "3,3"],
        vec!["cone-codes", "build", "random", "--seed", "17"],
        vec!["cone-codes", "build", "barycentric", "--facets", "0,1,2;2,3"],
    ] {
        cli::run(args, &mut out, &mut err);
    }
    out.extend(err);
    out
}

fn determinism() -> Outcome {
    let a = artifacts(1);
    let b = artifacts(4);
    ensure(a == b, || "artifacts differ between runs".into())?;
    Ok(format!("{} bytes identical across runs with 1 and 4 threads", a.len()))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("repetition homology", repetition_homology),
        ("kunneth and toric 3x3", kunneth_and_torus),
        ("boundary toric parameters", boundary_toric),
        ("cone soundness", cone_soundness),
        ("k preservation", k_preservation),
        ("lift correctness", lifts),
        ("layer distance bound", layer_bounds),
        ("weight-reduction bounds", weight_bounds),
        ("chain-map oracle", chain_map_oracle),
        ("determinism", determinism),
    ];
    let mut failed = 0;
    for (k, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = f();
        let t = start.elapsed();
        match outcome {
            Ok(detail) => println!("PASS {:>2} {name}: {detail} [{t:.2?}]", k + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {detail} [{t:.2?}]", k + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
