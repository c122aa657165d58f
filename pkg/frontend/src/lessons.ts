import { ApiClient, ApiError } from "./api.js";
import type { Lesson, LessonSummary } from "./types.js";

export interface LessonBrowserOptions {
  /** Called with the snippet text when a "run" button is pressed. */
  onRunSnippet?: (snippet: string) => void;
}

/**
 * Layer-grouped lesson navigation with inline quizzes. Lesson bodies come
 * straight from the catalog endpoints; quiz answers stay server-side and
 * grading happens through the quiz POST.
 */
export class LessonBrowser {
  summaries: LessonSummary[] = [];
  current: Lesson | null = null;

  private listPane: HTMLElement;
  private detailPane: HTMLElement;

  constructor(
    container: HTMLElement,
    private readonly api: ApiClient,
    private readonly options: LessonBrowserOptions = {},
  ) {
    container.replaceChildren();
    this.listPane = document.createElement("nav");
    this.listPane.className = "lesson-list";
    this.detailPane = document.createElement("article");
    this.detailPane.className = "lesson-detail";
    container.append(this.listPane, this.detailPane);
  }

  async load(): Promise<void> {
    this.summaries = await this.api.listLessons();
    this.renderList();
  }

  private renderList(): void {
    this.listPane.replaceChildren();
    for (const layer of [1, 2]) {
      const inLayer = this.summaries.filter((s) => s.layer === layer);
      if (inLayer.length === 0) continue;
      const header = document.createElement("h3");
      header.textContent = `Layer ${layer}`;
      this.listPane.appendChild(header);
      const list = document.createElement("ul");
      for (const summary of inLayer) {
        const item = document.createElement("li");
        const btn = document.createElement("button");
        btn.className = "lesson-link";
        btn.dataset.lessonId = summary.id;
        btn.textContent = summary.title;
        btn.addEventListener("click", () => void this.open(summary.id));
        item.appendChild(btn);
        list.appendChild(item);
      }
      this.listPane.appendChild(list);
    }
  }

  async open(lessonId: string): Promise<void> {
    try {
      this.current = await this.api.getLesson(lessonId);
    } catch (err) {
      if (err instanceof ApiError && err.status === 404) {
        this.current = null;
        this.renderNotFound(lessonId);
        return;
      }
      throw err;
    }
    this.renderLesson(this.current);
  }

  private renderNotFound(lessonId: string): void {
    this.detailPane.replaceChildren();
    const box = document.createElement("div");
    box.className = "lesson-missing";
    box.textContent = `no lesson named '${lessonId}'`;
    this.detailPane.appendChild(box);
  }

  private renderLesson(lesson: Lesson): void {
    this.detailPane.replaceChildren();

    const title = document.createElement("h2");
    title.textContent = `${lesson.title} (layer ${lesson.layer})`;
    this.detailPane.appendChild(title);

    if (lesson.banner) {
      const banner = document.createElement("div");
      banner.className = "lesson-banner";
      banner.textContent = lesson.banner;
      this.detailPane.appendChild(banner);
    }

    lesson.sections.forEach((section, i) => {
      const block = document.createElement("section");
      block.className = "lesson-section";
      block.dataset.section = String(i);

      const prose = document.createElement("p");
      prose.className = "lesson-prose";
      prose.textContent = section.prose;
      block.appendChild(prose);

      if (section.analogy_ref) {
        const chip = document.createElement("span");
        chip.className = "analogy-chip";
        chip.dataset.analogyId = section.analogy_ref;
        chip.textContent = section.analogy_ref;
        block.appendChild(chip);
      }

      if (section.circuit_snippet) {
        const pre = document.createElement("pre");
        pre.className = "lesson-snippet";
        pre.textContent = section.circuit_snippet;
        block.appendChild(pre);
        const snippet = section.circuit_snippet;
        const run = document.createElement("button");
        run.className = "snippet-run";
        run.textContent = "run";
        run.addEventListener("click", () => this.options.onRunSnippet?.(snippet));
        block.appendChild(run);
      }

      if (section.demo_ref) {
        const chip = document.createElement("span");
        chip.className = "demo-chip";
        chip.textContent = `demo: ${section.demo_ref.op}`;
        block.appendChild(chip);
      }

      this.detailPane.appendChild(block);
    });

    if (lesson.quiz.length > 0) {
      this.detailPane.appendChild(this.buildQuizForm(lesson));
    }
  }

  private buildQuizForm(lesson: Lesson): HTMLFormElement {
    const form = document.createElement("form");
    form.className = "quiz-form";

    lesson.quiz.forEach((question, qIndex) => {
      const fieldset = document.createElement("fieldset");
      fieldset.dataset.question = String(qIndex);
      const legend = document.createElement("legend");
      legend.textContent = question.question;
      fieldset.appendChild(legend);
      question.choices.forEach((choice, cIndex) => {
        const label = document.createElement("label");
        label.className = "quiz-choice";
        const radio = document.createElement("input");
        radio.type = "radio";
        radio.name = `q${qIndex}`;
        radio.value = String(cIndex);
        if (cIndex === 0) radio.checked = true;
        label.appendChild(radio);
        label.appendChild(document.createTextNode(` ${choice}`));
        fieldset.appendChild(label);
      });
      form.appendChild(fieldset);
    });

    const submit = document.createElement("button");
    submit.type = "submit";
    submit.className = "quiz-submit";
    submit.textContent = "grade quiz";
    form.appendChild(submit);

    const resultBox = document.createElement("div");
    resultBox.className = "quiz-result";
    form.appendChild(resultBox);

    form.addEventListener("submit", (event) => {
      event.preventDefault();
      void this.gradeQuiz(lesson, form, resultBox);
    });
    return form;
  }

  private async gradeQuiz(lesson: Lesson, form: HTMLFormElement, resultBox: HTMLElement): Promise<void> {
    const answers = lesson.quiz.map((_, qIndex) => {
      const checked = form.querySelector<HTMLInputElement>(`input[name="q${qIndex}"]:checked`);
      return checked ? Number(checked.value) : 0;
    });
    let grade;
    try {
      grade = await this.api.submitQuiz(lesson.id, answers);
    } catch (err) {
      resultBox.replaceChildren();
      resultBox.textContent = err instanceof ApiError ? err.message : String(err);
      return;
    }
    resultBox.replaceChildren();
    const score = document.createElement("div");
    score.className = "quiz-score";
    score.textContent = `score ${grade.score.toFixed(2)}`;
    resultBox.appendChild(score);
    grade.results.forEach((result, qIndex) => {
      const line = document.createElement("div");
      line.className = result.correct ? "quiz-feedback correct" : "quiz-feedback wrong";
      line.textContent = `${qIndex + 1}. ${result.correct ? "correct" : "incorrect"}: ${result.explanation}`;
      resultBox.appendChild(line);
    });
  }
}
