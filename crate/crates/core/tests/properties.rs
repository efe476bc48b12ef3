use proptest::prelude::*;

use vgroupoid::dsl::{parse, verify_source, EvalOptions};
use vgroupoid::CheckOptions;

const GOLDEN: &str = include_str!("data/golden.gd");

/// A well-formed program: a field, a space, then groupoids over it and
/// checks on them.
fn program() -> impl Strategy<Value = String> {
    let prime = prop::sample::select(vec![2u32, 3, 5, 7]);
    (prime, 1usize..=2, prop::collection::vec(0usize..6, 1..6), prop::collection::vec((0usize..8, 0usize..6), 0..8))
        .prop_map(|(p, dim, kinds, checks)| {
            let mut src = format!("field F = Zp({p})\nspace V = F^{dim}\n");
            let inverse = (1..p).find(|q| 2 * q % p == 1).unwrap_or(1);
            for (i, k) in kinds.iter().enumerate() {
                let body = match k {
                    0 => "single_unit(V)".to_string(),
                    1 => "null(V)".to_string(),
                    2 => "pair(V)".to_string(),
                    3 if p > 2 => format!("vpq(V, p=2, q={inverse})"),
                    3 => "vpq(V, p=1, q=-1)".to_string(),
                    4 => "v3(V)".to_string(),
                    _ => "sg(3)".to_string(),
                };
                src.push_str(&format!("groupoid G{i} = {body}\n"));
            }
            for (target, kind) in checks {
                let target = target % kinds.len();
                // `sg` carries no vector structure, so only the groupoid checks apply.
                let kind = if kinds[target] == 5 { kind % 3 } else { kind % 5 };
                let check = ["brandt", "calculus", "transitive", "vector", "consequences"][kind];
                src.push_str(&format!("check G{target} {check}\n"));
            }
            src
        })
}

fn within_text(src: &str, line: usize, col: usize) -> bool {
    let lines: Vec<&str> = src.split('\n').collect();
    line >= 1
        && line <= lines.len().max(1)
        && col >= 1
        && col <= lines.get(line - 1).map_or(0, |l| l.chars().count()) + 1
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rendered_ast_parses_back_to_itself(src in program()) {
        let ast = parse(&src).expect("generated programs are well-formed");
        let again = parse(&ast.to_string()).expect("rendered programs parse");
        prop_assert_eq!(ast.without_spans(), again.without_spans());
    }

    #[test]
    fn arbitrary_text_never_panics(src in "\\PC{0,200}") {
        if let Err(diags) = parse(&src) {
            for d in diags.iter() {
                prop_assert!(within_text(&src, d.line(), d.col()), "{d} outside the text");
            }
        }
    }

    #[test]
    fn damaged_golden_file_reports_inside_the_text(start in 0usize..GOLDEN.len(), len in 1usize..40) {
        let chars: Vec<char> = GOLDEN.chars().collect();
        let start = start.min(chars.len() - 1);
        let end = (start + len).min(chars.len());
        let src: String = chars[..start].iter().chain(&chars[end..]).collect();
        if let Err(diags) = verify_source(&src, &EvalOptions::default(), &CheckOptions::default()) {
            prop_assert!(diags.iter().next().is_some());
            for d in diags.iter() {
                prop_assert!(within_text(&src, d.line(), d.col()), "{d} outside the text");
            }
        }
    }

    #[test]
    fn witness_cap_bounds_witnesses_but_not_counts(cap in 1usize..6, images in prop::collection::vec(0usize..4, 4)) {
        let keys = ["(0,0)", "(0,1)", "(1,0)", "(1,1)"];
        let entries: Vec<String> = keys.iter().zip(&images).map(|(k, &i)| format!("{k} -> {}", keys[i])).collect();
        let src = format!(
            "field F = Zp(2)\nspace V = F^1\ngroupoid G = pair(V)\nmorphism M : G -> G = table{{ {} }}\ncheck M homomorphism\n",
            entries.join(", ")
        );
        let (capped, _) = verify_source(&src, &EvalOptions::default(), &CheckOptions::with_cap(cap)).unwrap();
        let (wide, _) = verify_source(&src, &EvalOptions::default(), &CheckOptions::with_cap(1000)).unwrap();
        prop_assert_eq!(capped.status, wide.status);
        for (a, b) in capped.directives[0].laws.iter().zip(&wide.directives[0].laws) {
            prop_assert!(a.witnesses.len() <= cap);
            prop_assert!(a.witnesses.len() as u64 <= a.violations);
            prop_assert_eq!(a.violations, b.violations);
            prop_assert_eq!(a.examined, b.examined);
            prop_assert_eq!(&a.witnesses[..], &b.witnesses[..a.witnesses.len()]);
        }
    }
}
