/**
 * Client-side input validation mirroring the server's rules, so the UI
 * never sends a request the service would reject with 400.
 */

export const MAX_KEYWORDS = 10;
export const MAX_KEYWORD_LEN = 64;
export const MAX_GENRE_LEN = 64;
export const MAX_SENTENCE_LEN = 500;
export const MAX_EMOTIONS_LEN = 128;

export interface FieldErrors {
  [field: string]: string;
}

export function splitKeywords(raw: string): string[] {
  return raw
    .split(",")
    .map((part) => part.trim())
    .filter((part) => part.length > 0);
}

export function validateDialogueInput(
  keywords: string,
  genre: string,
  creativity: number,
): FieldErrors {
  const errors: FieldErrors = {};
  const parsed = splitKeywords(keywords);
  if (parsed.length === 0) {
    errors.keywords = "at least one keyword is required";
  } else if (parsed.length > MAX_KEYWORDS) {
    errors.keywords = `at most ${MAX_KEYWORDS} keywords`;
  } else if (parsed.some((keyword) => keyword.length > MAX_KEYWORD_LEN)) {
    errors.keywords = `keywords must stay under ${MAX_KEYWORD_LEN} characters`;
  }
  if (genre.trim().length === 0) {
    errors.genre = "genre required";
  } else if (genre.trim().length > MAX_GENRE_LEN) {
    errors.genre = `genre must stay under ${MAX_GENRE_LEN} characters`;
  }
  if (!Number.isFinite(creativity) || creativity < 0 || creativity > 1) {
    errors.creativity = "creativity must be between 0 and 1";
  }
  return errors;
}

export function validateMonologueInput(
  sentence: string,
  emotions: string,
  creativity: number,
): FieldErrors {
  const errors: FieldErrors = {};
  if (sentence.trim().length === 0) {
    errors.sentence = "sentence required";
  } else if (sentence.trim().length > MAX_SENTENCE_LEN) {
    errors.sentence = `sentence must stay under ${MAX_SENTENCE_LEN} characters`;
  }
  if (emotions.trim().length === 0) {
    errors.emotions = "emotion required";
  } else if (emotions.trim().length > MAX_EMOTIONS_LEN) {
    errors.emotions = `emotions must stay under ${MAX_EMOTIONS_LEN} characters`;
  }
  if (!Number.isFinite(creativity) || creativity < 0 || creativity > 1) {
    errors.creativity = "creativity must be between 0 and 1";
  }
  return errors;
}

/** Slider position 0-100 to the API's creativity value with 0.01 steps. */
export function sliderToCreativity(position: number): number {
  return Math.round(position) / 100;
}
