//! Replays the two published worked examples end-to-end: the length-4
//! weighted shift over F_5 with its code `ker(A+I) + ker(A+2I)`, and the
//! length-6 two-block matrix whose fixed line is invariant but not
//! characteristic. Every displayed value is diffed against the computed
//! one; known misprints in the source display are reported separately as
//! discrepancies with both readings.

use std::process::ExitCode;

use serde_json::{json, Value};

use monocode::codes::shift_closure_check;
use monocode::gf::{Field, FieldElement};
use monocode::linalg::{MatrixFq, Subspace};
use monocode::monomial::{MonomialMatrix, Permutation};
use monocode::poly::Polynomial;
use monocode::structure::{centralizer, check_characteristic, CharacteristicStatus};
use monocode::Result;

use crate::ExamplesArgs;

struct Check {
    id: &'static str,
    description: &'static str,
    pass: bool,
    detail: String,
}

struct Discrepancy {
    id: &'static str,
    stated: String,
    computed: String,
    note: String,
}

fn elems(field: &Field, v: &[i64]) -> Vec<FieldElement> {
    v.iter().map(|&x| field.from_int(x)).collect()
}

fn fmt_space(s: &Subspace) -> String {
    let rows: Vec<String> = s
        .basis_rows()
        .iter()
        .map(|r| {
            let es: Vec<String> = r.iter().map(|e| e.to_string()).collect();
            format!("({})", es.join(","))
        })
        .collect();
    format!("span{{{}}}", rows.join(", "))
}

pub fn run(args: &ExamplesArgs) -> Result<ExitCode> {
    let mut checks = Vec::new();
    let mut discrepancies = Vec::new();
    length_four_example(&mut checks, &mut discrepancies);
    two_block_example(&mut checks, &mut discrepancies, args.budget, args.seed);

    let all_pass = checks.iter().all(|c| c.pass);
    if args.json {
        let value = json!({
            "pass": all_pass,
            "checks": checks
                .iter()
                .map(|c| {
                    json!({
                        "id": c.id,
                        "description": c.description,
                        "pass": c.pass,
                        "detail": c.detail,
                    })
                })
                .collect::<Vec<Value>>(),
            "discrepancies": discrepancies
                .iter()
                .map(|d| {
                    json!({
                        "id": d.id,
                        "stated": d.stated,
                        "computed": d.computed,
                        "note": d.note,
                    })
                })
                .collect::<Vec<Value>>(),
        });
        println!("{}", serde_json::to_string(&value).expect("valid json"));
    } else {
        for c in &checks {
            if c.pass {
                println!("ok       {} — {}", c.id, c.description);
            } else {
                println!("MISMATCH {} — {}: {}", c.id, c.description, c.detail);
            }
        }
        for d in &discrepancies {
            println!(
                "note     {} — stated {}; computed {}; {}",
                d.id, d.stated, d.computed, d.note
            );
        }
        println!(
            "{}: {} checks, {} known display discrepancies",
            if all_pass { "PASS" } else { "FAIL" },
            checks.len(),
            discrepancies.len()
        );
    }
    Ok(if all_pass {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

fn push(
    checks: &mut Vec<Check>,
    id: &'static str,
    description: &'static str,
    pass: bool,
    detail: String,
) {
    checks.push(Check {
        id,
        description,
        pass,
        detail,
    });
}

fn length_four_example(checks: &mut Vec<Check>, discrepancies: &mut Vec<Discrepancy>) {
    let field = Field::prime(5).unwrap();
    let m = MonomialMatrix::build_simple(elems(&field, &[3, 4, 3, 1])).unwrap();
    let a = m.matrix().clone();

    let displayed_a = MatrixFq::from_ints(
        &field,
        &[&[0, 0, 0, 1], &[3, 0, 0, 0], &[0, 4, 0, 0], &[0, 0, 3, 0]],
    );
    push(
        checks,
        "ex1.matrix",
        "displayed 4x4 matrix is the weighted shift of (3,4,3,1)",
        a == displayed_a,
        String::new(),
    );

    // the stated associated vector disagrees with the displayed matrix
    let stated_vector = MonomialMatrix::build_simple(elems(&field, &[1, 1, 1, 3])).unwrap();
    discrepancies.push(Discrepancy {
        id: "ex1.stated_vector",
        stated: "associated vector (1,1,1,3)".into(),
        computed: "matrix coefficients (3,4,3,1)".into(),
        note: format!(
            "the stated vector gives characteristic polynomial {}, the display gives {}; \
             the displayed matrix is treated as ground truth",
            stated_vector.char_poly(),
            m.char_poly()
        ),
    });

    let char_poly = m.char_poly();
    let expected_char = Polynomial::from_ints(&field, &[4, 0, 0, 0, 1]);
    push(
        checks,
        "ex1.char_poly",
        "characteristic polynomial is t^4 + 4",
        char_poly == expected_char,
        format!("computed {char_poly}"),
    );

    let factorization = char_poly.factorize().unwrap();
    let expected_factors: Vec<(Polynomial, usize)> = (1..=4)
        .map(|c| (Polynomial::from_ints(&field, &[c, 1]), 1))
        .collect();
    push(
        checks,
        "ex1.factorization",
        "t^4 + 4 factors as (t+1)(t+2)(t+3)(t+4)",
        factorization.unit.is_one() && factorization.factors == expected_factors,
        format!("computed {factorization}"),
    );

    let id = MatrixFq::identity(&field, 4);
    let k1 = a.add(&id).kernel();
    let expected_k1 = Subspace::from_rows(&field, 4, vec![elems(&field, &[1, 2, 2, 4])]);
    push(
        checks,
        "ex1.ker_a_plus_i",
        "ker(A + I) is spanned by (1,2,2,4)",
        k1 == expected_k1,
        format!("computed {}", fmt_space(&k1)),
    );

    let k2 = a.add(&id.scale(&field.element(2))).kernel();
    let expected_k2 = Subspace::from_rows(&field, 4, vec![elems(&field, &[1, 1, 3, 3])]);
    push(
        checks,
        "ex1.ker_a_plus_2i",
        "ker(A + 2I) is spanned by (1,1,3,3)",
        k2 == expected_k2,
        format!("computed {}", fmt_space(&k2)),
    );

    let g = Polynomial::from_ints(&field, &[2, 3, 1]);
    let g_at_a = g.eval_matrix(&a);
    let displayed_g = MatrixFq::from_ints(
        &field,
        &[&[2, 0, 3, 3], &[4, 2, 0, 3], &[2, 2, 2, 0], &[0, 2, 4, 2]],
    );
    push(
        checks,
        "ex1.g_matrix",
        "A^2 + 3A + 2I matches the displayed matrix entry for entry",
        g_at_a == displayed_g,
        String::new(),
    );

    let code = k1.sum(&k2);
    let kernel = displayed_g.kernel();
    push(
        checks,
        "ex1.code_kernel",
        "ker(A^2 + 3A + 2I) equals ker(A+I) + ker(A+2I)",
        kernel == code,
        format!("kernel {}, sum {}", fmt_space(&kernel), fmt_space(&code)),
    );
    push(
        checks,
        "ex1.code_dim",
        "the code has dimension 2",
        code.dim() == 2,
        format!("computed {}", code.dim()),
    );

    // the displayed final basis is not a kernel basis of the displayed matrix
    let stated_rows = [[1i64, 3, 2, 1], [0, 4, 1, 1]];
    let stated_span = Subspace::from_rows(
        &field,
        4,
        stated_rows.iter().map(|r| elems(&field, r)).collect(),
    );
    if kernel != stated_span {
        let residuals: Vec<String> = stated_rows
            .iter()
            .map(|r| {
                let image = displayed_g.mul_vec(&elems(&field, r));
                let es: Vec<String> = image.iter().map(|e| e.to_string()).collect();
                format!("M*({r:?})^t = ({})", es.join(","))
            })
            .collect();
        discrepancies.push(Discrepancy {
            id: "ex1.displayed_basis",
            stated: "kernel basis <(1,3,2,1),(0,4,1,1)>".into(),
            computed: fmt_space(&kernel),
            note: format!(
                "the stated vectors do not lie in the kernel of the displayed matrix: {}; \
                 (1,3,2,1) is the eigenvector for eigenvalue 1",
                residuals.join("; ")
            ),
        });
    }
}

fn two_block_example(
    checks: &mut Vec<Check>,
    _discrepancies: &mut [Discrepancy],
    budget: usize,
    seed: u64,
) {
    let field = Field::prime(5).unwrap();
    let m = MonomialMatrix::build_general(
        elems(&field, &[2, 3, 1, 2, 3, 1]),
        Permutation::from_cycles(6, &[vec![0, 1, 2], vec![3, 4, 5]]).unwrap(),
    )
    .unwrap();

    let displayed_a = MatrixFq::from_ints(
        &field,
        &[
            &[0, 0, 1, 0, 0, 0],
            &[2, 0, 0, 0, 0, 0],
            &[0, 3, 0, 0, 0, 0],
            &[0, 0, 0, 0, 0, 1],
            &[0, 0, 0, 2, 0, 0],
            &[0, 0, 0, 0, 3, 0],
        ],
    );
    push(
        checks,
        "ex2.matrix",
        "displayed 6x6 matrix is the two-block monomial matrix",
        *m.matrix() == displayed_a,
        String::new(),
    );

    let generator = elems(&field, &[1, 2, 1, 0, 0, 0]);
    let v = Subspace::from_rows(&field, 6, vec![generator.clone()]);
    push(
        checks,
        "ex2.invariant",
        "V = span{(1,2,1,0,0,0)} is A-invariant",
        shift_closure_check(&v, &m),
        String::new(),
    );

    let displayed_c = MatrixFq::from_ints(
        &field,
        &[
            &[0, 0, 0, 1, 3, 1],
            &[0, 0, 0, 2, 1, 2],
            &[0, 0, 0, 1, 3, 1],
            &[1, 3, 1, 0, 0, 0],
            &[2, 1, 2, 0, 0, 0],
            &[1, 3, 1, 0, 0, 0],
        ],
    );
    push(
        checks,
        "ex2.centralizer_member",
        "the displayed matrix C commutes with A",
        displayed_c.commutes_with(m.matrix()) && centralizer(m.matrix()).contains(&displayed_c),
        String::new(),
    );

    let swap = MatrixFq::from_ints(
        &field,
        &[
            &[0, 0, 0, 1, 0, 0],
            &[0, 0, 0, 0, 1, 0],
            &[0, 0, 0, 0, 0, 1],
            &[1, 0, 0, 0, 0, 0],
            &[0, 1, 0, 0, 0, 0],
            &[0, 0, 1, 0, 0, 0],
        ],
    );
    let image = swap.mul_vec(&generator);
    push(
        checks,
        "ex2.swap_witness",
        "the block swap commutes, is invertible, and maps (1,2,1,0,0,0) to (0,0,0,1,2,1) outside V",
        swap.commutes_with(m.matrix())
            && swap.is_invertible()
            && image == elems(&field, &[0, 0, 0, 1, 2, 1])
            && !v.contains(&image),
        String::new(),
    );

    let report = check_characteristic(&v, m.matrix(), budget, seed);
    let witness_ok = report.witness.as_ref().is_some_and(|w| {
        w.is_invertible() && w.commutes_with(m.matrix()) && !v.contains(&w.mul_vec(&generator))
    });
    push(
        checks,
        "ex2.refuted",
        "V is invariant but not characteristic (refuted with an explicit witness)",
        report.invariant
            && !report.hyperinvariant
            && report.status == CharacteristicStatus::Refuted
            && witness_ok,
        format!("status {:?}", report.status),
    );

    // the decomposition along the two cycles recovers the block pieces
    let c2 = Subspace::from_rows(
        &field,
        6,
        vec![generator.clone(), elems(&field, &[0, 0, 0, 1, 2, 1])],
    );
    let parts = monocode::structure::decompose_generalized(&c2, &m);
    push(
        checks,
        "ex2.cycle_split",
        "span{(1,2,1,0,0,0),(0,0,0,1,2,1)} splits into one line per cycle",
        parts.as_ref().is_ok_and(|p| {
            p.len() == 2
                && p[0].space == v
                && p[1].space
                    == Subspace::from_rows(&field, 6, vec![elems(&field, &[0, 0, 0, 1, 2, 1])])
        }),
        String::new(),
    );
}
