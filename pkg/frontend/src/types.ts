// Wire shapes of the simulator API, mirrored field for field. The UI never
// recomputes amplitudes, Bloch vectors, or probabilities; it renders these.

export interface AmplitudeView {
  re: number;
  im: number;
  probability: number;
}

export interface BlochVector {
  x: number;
  y: number;
  z: number;
}

export interface StateView {
  num_qubits: number;
  amplitudes: AmplitudeView[];
  bloch: BlochVector[];
  entangled_flags: boolean[];
}

export interface AnalogyCard {
  id: string;
  concept: string;
  title: string;
  body: string;
  source_table: string;
}

export interface SessionCreated {
  session_id: string;
  state_view: StateView;
}

export interface InstructionResult {
  state_view: StateView;
  analogy: AnalogyCard | null;
}

export interface MeasureResult {
  outcome: number;
  state_view: StateView;
}

export interface LessonSummary {
  id: string;
  layer: number;
  title: string;
}

export interface DemoRef {
  op: string;
  params: Record<string, unknown>;
}

export interface LessonSection {
  prose: string;
  analogy_ref: string | null;
  circuit_snippet: string | null;
  demo_ref: DemoRef | null;
}

export interface QuizQuestion {
  question: string;
  choices: string[];
}

export interface Lesson {
  id: string;
  layer: number;
  title: string;
  banner: string | null;
  sections: LessonSection[];
  quiz: QuizQuestion[];
}

export interface QuizItemResult {
  correct: boolean;
  answer_index: number;
  explanation: string;
}

export interface QuizGrade {
  score: number;
  results: QuizItemResult[];
}

export interface GroverReport {
  search_space_size: number;
  padded_size: number;
  marked_index: number;
  iterations_run: number;
  marked_amplitude_trace: number[];
  final_success_probability: number;
  pedagogical_query_count: number;
  optimal_iterations: number;
}

export interface ShorAttempt {
  a: number;
  order_r: number | null;
  accepted: boolean;
  reason: string;
}

export interface FactorReport {
  N: number;
  mode: string;
  attempts: ShorAttempt[];
  factors: number[] | null;
  counting_qubits: number | null;
}

export interface EavesdropReport {
  num_check_bits: number;
  intercepted: boolean;
  mismatch_count: number;
  mismatch_rate: number;
}
