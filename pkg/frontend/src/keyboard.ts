/** Keyboard-first review flow: 1-9 selects a rank, a/r records a verdict,
 * n skips to the next synset, t triggers retraining.
 */

export type KeyAction =
  | { kind: "select"; rank: number }
  | { kind: "verdict"; verdict: "accept" | "reject" }
  | { kind: "next" }
  | { kind: "retrain" }
  | { kind: "none" };

export interface KeyInput {
  key: string;
  inTextField?: boolean;
}

export function actionForKey(input: KeyInput): KeyAction {
  if (input.inTextField) return { kind: "none" };
  const key = input.key;
  if (key >= "1" && key <= "9") {
    return { kind: "select", rank: Number(key) };
  }
  switch (key.toLowerCase()) {
    case "a":
      return { kind: "verdict", verdict: "accept" };
    case "r":
      return { kind: "verdict", verdict: "reject" };
    case "n":
      return { kind: "next" };
    case "t":
      return { kind: "retrain" };
    default:
      return { kind: "none" };
  }
}
