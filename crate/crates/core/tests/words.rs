use crisp_core::align::{AttentionBundle, AttentionTensor, TokenSpan};
use crisp_core::pipeline::{align, AlignOptions};
use crisp_core::tokenizer::Token;
use crisp_core::words::{apply_pause_heuristic, filter_short_tokens, WordTiming};
use proptest::prelude::*;

fn layout() -> impl Strategy<Value = Vec<WordTiming>> {
    prop::collection::vec((0.05f64..0.8, prop_oneof![Just(0.0), 0.0f64..0.16, 0.16f64..1.5]), 1..12).prop_map(
        |parts| {
            let mut t = 0.3;
            parts
                .into_iter()
                .enumerate()
                .map(|(i, (dur, gap))| {
                    let w = WordTiming {
                        text: format!("w{i}"),
                        onset_s: t,
                        offset_s: t + dur,
                        source_token_indices: vec![i],
                    };
                    t += dur + gap;
                    w
                })
                .collect()
        },
    )
}

proptest! {
    #[test]
    fn words_and_pauses_tile_the_interval(words in layout(), cap in 0.05f64..0.4) {
        let (out, pauses) = apply_pause_heuristic(&words, cap).unwrap();
        let span = words.last().unwrap().offset_s - words[0].onset_s;
        let covered: f64 = out.iter().map(|w| w.duration_s()).sum::<f64>()
            + pauses.iter().map(|p| p.duration_s()).sum::<f64>();
        prop_assert!((covered - span).abs() < 1e-9);

        for w in out.windows(2) {
            prop_assert!(w[0].onset_s < w[0].offset_s);
            prop_assert!(w[0].offset_s <= w[1].onset_s + 1e-12);
        }
        for (before, after) in words.iter().zip(&out) {
            prop_assert!(before.onset_s - after.onset_s <= cap / 2.0 + 1e-12);
            prop_assert!(after.offset_s - before.offset_s <= cap / 2.0 + 1e-12);
        }
        for p in &pauses {
            prop_assert!(p.duration_s() > 0.0);
        }
    }

    #[test]
    fn filter_is_monotone(durs in prop::collection::vec(0.0f64..0.12, 1..30), lo in 0.0f64..0.1, extra in 0.0f64..0.1) {
        let tokens: Vec<Token> = (0..durs.len()).map(|i| Token::new(i as u32, if i % 3 == 2 { " " } else { "ok" })).collect();
        let mut t = 0.0;
        let spans: Vec<TokenSpan> = durs.iter().enumerate().map(|(i, d)| {
            let s = TokenSpan { token_index: i, onset_s: t, offset_s: t + d + 1e-3 };
            t += d + 1e-3;
            s
        }).collect();
        let (a, _) = filter_short_tokens(&spans, &tokens, lo);
        let (b, _) = filter_short_tokens(&spans, &tokens, lo + extra);
        prop_assert!(b.len() <= a.len());
    }
}

#[test]
fn all_zero_gaps_are_untouched() {
    let words: Vec<WordTiming> = (0..5)
        .map(|i| WordTiming {
            text: "x".into(),
            onset_s: i as f64 * 0.3,
            offset_s: (i + 1) as f64 * 0.3,
            source_token_indices: vec![],
        })
        .collect();
    let (out, pauses) = apply_pause_heuristic(&words, 0.16).unwrap();
    assert_eq!(out, words);
    assert!(pauses.is_empty());
}

/// One 20 ms frame per token.
fn diagonal(texts: &[&str]) -> AttentionBundle {
    let n = texts.len();
    let mut data = vec![0f32; n * n];
    for i in 0..n {
        data[i * n + i] = 1.0;
    }
    let tokens = texts.iter().enumerate().map(|(i, t)| Token::new(i as u32, *t)).collect();
    AttentionBundle::new(AttentionTensor::new(n, 1, n, data).unwrap(), tokens, 0.02).unwrap()
}

#[test]
fn identical_one_frame_tokens_are_removed() {
    let bundle = diagonal(&["the"; 20]);
    assert!(align(&bundle, &AlignOptions::default()).unwrap().words.is_empty());
    let off = align(&bundle, &AlignOptions { hallucination_filter: false, ..Default::default() }).unwrap();
    assert_eq!(off.words.len(), 1);
}

#[test]
fn repetition_loop_is_removed_by_the_filter() {
    let texts: Vec<&str> = (0..40).map(|i| if i % 2 == 0 { "the" } else { " " }).collect();
    let bundle = diagonal(&texts);
    let on = align(&bundle, &AlignOptions::default()).unwrap();
    assert!(on.words.is_empty());
    let off = align(&bundle, &AlignOptions { hallucination_filter: false, ..Default::default() }).unwrap();
    assert_eq!(off.words.len(), 20);
    assert!(off.words.iter().all(|w| w.text == "the"));
}
