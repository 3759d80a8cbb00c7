"""Generated repositories: the labeled calibration fixture and synthetic load.

The calibration fixture replays a small calculator project commit by commit:
arithmetic operations arrive one at a time, formatting/rename/reorder commits
change nothing measurable, unrelated string operations are inserted and later
extracted into their own file, and a few features are deleted outright.
Every commit carries an expectation label: -1 entropy decrease expected,
0 no change expected, +1 increase expected.
"""

from __future__ import annotations

import os
import shutil
import subprocess
from dataclasses import dataclass

from .gitio import git_env
from .report import write_labels

_AUTHOR = "Fixture Bot"
_EMAIL = "fixture@example.invalid"
_EPOCH = 1609459200  # 2021-01-01T00:00:00Z
_STEP_SECONDS = 3600


# -- Java building blocks -----------------------------------------------------

_M_ADD = """\
    /** Adds two operands and returns their total. */
    public int add(int left, int right) {
        return left + right;
    }
"""

_M_SUBTRACT = """\
    /** Subtracts the subtrahend from the minuend. */
    public int subtract(int minuend, int subtrahend) {
        int difference = minuend - subtrahend;
        return difference;
    }
"""

_M_MULTIPLY = """\
    /** Multiplies two factors using repeated addition. */
    public int multiply(int factor, int times) {
        int product = 0;
        for (int step = 0; step < times; step++) {
            product = product + factor;
        }
        return product;
    }
"""

_M_DIVIDE = """\
    /** Divides the dividend by the divisor. */
    public int divide(int dividend, int divisor) {
        if (divisor == 0) {
            throw new ArithmeticException("cannot divide by zero");
        }
        return dividend / divisor;
    }
"""

_M_INTEGER_OPS = """\
    /** Remainder after integer division. */
    public int modulo(int amount, int bucket) {
        return amount % bucket;
    }

    /** Sign of the operand: -1, 0 or +1. */
    public int signum(int operand) {
        if (operand > 0) {
            return 1;
        } else if (operand < 0) {
            return -1;
        }
        return 0;
    }

    /** Absolute magnitude of the operand. */
    public int absolute(int operand) {
        return operand < 0 ? -operand : operand;
    }

    /** Raises a base to a non-negative exponent. */
    public long power(long base, int exponent) {
        long result = 1L;
        int remaining = exponent;
        while (remaining > 0) {
            result = result * base;
            remaining = remaining - 1;
        }
        return result;
    }
"""

_M_AGGREGATE = """\
    /** Sums every sample in the array. */
    public int sum(int[] samples) {
        int total = 0;
        for (int sample : samples) {
            total += sample;
        }
        return total;
    }

    /** Arithmetic mean of the samples. */
    public double average(int[] samples) {
        return sum(samples) / (double) samples.length;
    }
"""

_M_STRINGS_ONE = """\
    /** Joins two pieces of text. */
    public String concatenate(String head, String tail) {
        return head + tail;
    }

    /** Repeats a chunk of text a number of times. */
    public String repeatText(String chunk, int copies) {
        StringBuilder builder = new StringBuilder();
        for (int copy = 0; copy < copies; copy++) {
            builder.append(chunk);
        }
        return builder.toString();
    }

    /** Human readable description of small numbers. */
    public String describeNumber(int number) {
        switch (number) {
            case 0:
                return "zero";
            case 1:
                return "one";
            case 2:
                return "two";
            default:
                return "many";
        }
    }
"""

_M_STRINGS_TWO = """\
    /** Reverses the characters of the text. */
    public String reverseText(String text) {
        StringBuilder reversed = new StringBuilder();
        int cursor = text.length() - 1;
        while (cursor >= 0) {
            reversed.append(text.charAt(cursor));
            cursor--;
        }
        return reversed.toString();
    }

    /** True when the text reads the same in both directions. */
    public boolean isPalindrome(String text) {
        int forward = 0;
        int backward = text.length() - 1;
        while (forward < backward) {
            if (text.charAt(forward) != text.charAt(backward)) {
                return false;
            }
            forward++;
            backward--;
        }
        return true;
    }
"""

_M_GCD = """\
    /** Greatest common divisor by the euclidean algorithm. */
    public static int gcd(int first, int second) {
        int larger = first;
        int smaller = second;
        while (smaller != 0) {
            int leftover = larger % smaller;
            larger = smaller;
            smaller = leftover;
        }
        return larger;
    }
"""

_M_IS_PRIME = """\
    /** Trial division primality check. */
    public static boolean isPrime(int candidate) {
        if (candidate < 2) {
            return false;
        }
        for (int probe = 2; probe * probe <= candidate; probe++) {
            if (candidate % probe == 0) {
                return false;
            }
        }
        return true;
    }
"""

_M_SQRT_NEWTON = """\
    /** Square root approximated by newton iteration. */
    public static double squareRoot(double input) {
        double epsilon = 0.000001;
        double guess = input / 2.0;
        double previous;
        do {
            previous = guess;
            guess = (previous + input / previous) / 2.0;
        } while (previous - guess > epsilon || guess - previous > epsilon);
        return guess;
    }
"""

_M_BINARY = """\
    /** Binary text rendering of a non-negative value. */
    public static String toBinaryText(int value) {
        StringBuilder bits = new StringBuilder();
        int remaining = value;
        do {
            bits.append((char) ('0' + (remaining & 1)));
            remaining = remaining >> 1;
        } while (remaining != 0);
        return bits.reverse().toString();
    }

    /** Parses binary text back into a value. */
    public static int fromBinaryText(String bits) {
        int value = 0;
        for (int index = 0; index < bits.length(); index++) {
            value = (value << 1) | (bits.charAt(index) - '0');
        }
        return value;
    }
"""

_SCRATCHPAD = """\
public class ScratchPad {
    /** Temporary experiment with an obscure rounding trick. */
    public int roundTrick(double wobbly) {
        int snapped = (int) (wobbly + 0.5);
        if (snapped % 2 == 0) {
            if (snapped > 100) {
                snapped = snapped - 1;
            }
        }
        return snapped;
    }

    /** Debug helper that tags messages. */
    public String tagMessage(String message) {
        return "scratch:" + message;
    }
}
"""

_STATISTICS = """\
public class Statistics {
    /** Mean of the observations. */
    public double mean(double[] observations) {
        double accumulated = 0.0;
        for (double observation : observations) {
            accumulated += observation;
        }
        return accumulated / observations.length;
    }

    /** Population variance of the observations. */
    public double variance(double[] observations) {
        double center = mean(observations);
        double spread = 0.0;
        for (double observation : observations) {
            double offset = observation - center;
            spread += offset * offset;
        }
        return spread / observations.length;
    }
}
"""

_MEMORY = """\
import java.util.ArrayList;
import java.util.List;

public class CalculatorMemory {
    private final List<Double> slots = new ArrayList<>();

    /** Stores a value in the next free slot. */
    public void store(double value) {
        slots.add(value);
    }

    /** Recalls the most recently stored value. */
    public double recall() {
        if (slots.isEmpty()) {
            throw new IllegalStateException("memory is empty");
        }
        return slots.get(slots.size() - 1);
    }

    /** Number of occupied slots. */
    public int occupied() {
        return slots.size();
    }

    /** Clears every slot. */
    public void clearAll() {
        slots.clear();
    }
}
"""

_MAIN = """\
public class Main {
    /** Command line entry point. */
    public static void main(String[] args) {
        if (args.length < 3) {
            System.out.println("usage: operation left right");
            return;
        }
        Calculator calculator = new Calculator();
        try {
            int left = Integer.parseInt(args[1]);
            int right = Integer.parseInt(args[2]);
            if (args[0].equals("add")) {
                System.out.println(calculator.add(left, right));
            } else if (args[0].equals("subtract")) {
                System.out.println(calculator.subtract(left, right));
            } else {
                System.out.println("unknown operation " + args[0]);
            }
        } catch (NumberFormatException badNumber) {
            System.out.println("arguments must be integers");
        }
    }
}
"""

_README = """\
# calculator

A tiny calculator used as a measurement fixture.  Each commit applies one
well-understood change so expectations about information content are easy
to label by hand.
"""

_README_TWO = _README + """
## layout

Arithmetic lives in Calculator, number theory in NumberTheory, and text
helpers in StringOps.
"""


def _class_file(name: str, methods: list[str], statics: bool = False) -> str:
    decl = f"public final class {name}" if statics else f"public class {name}"
    body = "\n".join(methods)
    head = ""
    if statics:
        head = f"    private {name}() {{\n    }}\n\n"
    return f"{decl} {{\n{head}{body}}}\n"


def _reformat(source: str) -> str:
    """Whitespace-only transform: swap 4-space indents for tabs."""
    lines = []
    for line in source.split("\n"):
        stripped = line.lstrip(" ")
        depth = (len(line) - len(stripped)) // 4
        lines.append("\t" * depth + stripped)
    return "\n".join(lines)


@dataclass
class FixtureStep:
    label: int
    message: str
    tree: dict[str, str]


def calibration_plan() -> list[FixtureStep]:
    """The full commit plan: (expectation label, message, tree snapshot)."""
    steps: list[FixtureStep] = []
    calc = [_M_ADD]
    math_utils = [_M_GCD, _M_IS_PRIME]

    def calculator() -> str:
        return _class_file("Calculator", calc)

    def math_file(methods: list[str] | None = None) -> str:
        return _class_file("MathUtils", methods or math_utils, statics=True)

    def number_theory(methods: list[str] | None = None) -> str:
        return _class_file("NumberTheory", methods or math_utils, statics=True)

    tree: dict[str, str] = {}

    def snap(label: int, message: str, **changes: str | None) -> None:
        for path, content in changes.items():
            real = path.replace("__", ".")
            if content is None:
                tree.pop(real, None)
            else:
                tree[real] = content
        steps.append(FixtureStep(label, message, dict(tree)))

    snap(+1, "start calculator with addition", Calculator__java=calculator())
    calc.append(_M_SUBTRACT)
    snap(+1, "add subtraction", Calculator__java=calculator())
    snap(0, "reformat calculator", Calculator__java=_reformat(calculator()))
    calc.append(_M_MULTIPLY)
    snap(+1, "add multiplication", Calculator__java=calculator())
    calc.append(_M_DIVIDE)
    snap(+1, "add division with zero guard", Calculator__java=calculator())
    reordered = [calc[2], calc[0], calc[3], calc[1]]
    snap(0, "reorder calculator methods",
         Calculator__java=_class_file("Calculator", reordered))
    calc.append(_M_INTEGER_OPS)
    snap(+1, "add modulo, signum, absolute and power", Calculator__java=calculator())
    snap(+1, "add number theory helpers", MathUtils__java=math_file())
    snap(0, "reformat math utils", MathUtils__java=_reformat(math_file()))
    calc.append(_M_AGGREGATE)
    snap(+1, "add array aggregation", Calculator__java=calculator())
    math_utils.append(_M_SQRT_NEWTON)
    snap(+1, "add newton square root", MathUtils__java=math_file())
    snap(0, "rename math utils", MathUtils__java=None,
         NumberTheory__java=number_theory())
    snap(+1, "add scratch pad experiments", ScratchPad__java=_SCRATCHPAD)
    snap(0, "reformat scratch pad", ScratchPad__java=_reformat(_SCRATCHPAD))
    snap(-1, "delete scratch pad", ScratchPad__java=None)
    snap(+1, "add statistics", Statistics__java=_STATISTICS)
    snap(0, "reformat statistics", Statistics__java=_reformat(_STATISTICS))
    calc.append(_M_STRINGS_ONE)
    calc.append(_M_STRINGS_TWO)
    snap(+1, "insert unrelated string operations", Calculator__java=calculator())
    snap(0, "reformat calculator again", Calculator__java=_reformat(calculator()))
    snap(+1, "add calculator memory", CalculatorMemory__java=_MEMORY)
    snap(0, "reformat calculator memory", CalculatorMemory__java=_reformat(_MEMORY))
    snap(0, "rename statistics", Statistics__java=None, Stats__java=_STATISTICS)
    snap(-1, "drop statistics in favour of a library", Stats__java=None)
    calc.remove(_M_STRINGS_ONE)
    calc.remove(_M_STRINGS_TWO)
    snap(+1, "extract string operations into their own context",
         Calculator__java=calculator(),
         StringOps__java=_class_file("StringOps", [_M_STRINGS_ONE, _M_STRINGS_TWO]))
    snap(0, "reformat string operations",
         StringOps__java=_reformat(
             _class_file("StringOps", [_M_STRINGS_ONE, _M_STRINGS_TWO])))
    math_utils.append(_M_BINARY)
    snap(+1, "add binary text conversions", NumberTheory__java=number_theory())
    snap(0, "reorder number theory methods",
         NumberTheory__java=number_theory(
             [math_utils[1], math_utils[3], math_utils[0], math_utils[2]]))
    math_utils.remove(_M_BINARY)
    snap(-1, "drop binary text conversions", NumberTheory__java=number_theory())
    snap(+1, "add command line entry point", Main__java=_MAIN)
    snap(0, "document the project", README__md=_README)
    snap(0, "reformat entry point", Main__java=_reformat(_MAIN))
    snap(0, "expand the documentation", README__md=_README_TWO)
    snap(-1, "remove calculator memory", CalculatorMemory__java=None)
    return steps


@dataclass
class FixtureResult:
    repo_path: str
    labels_path: str
    commits: list[str]
    labels: list[int]


def _run_git(repo: str, *args: str, env: dict | None = None) -> str:
    proc = subprocess.run(
        ["git", "-C", repo, *args],
        capture_output=True,
        env=env or git_env(),
        text=True,
    )
    if proc.returncode != 0:
        raise RuntimeError(f"git {args[0]} failed: {proc.stderr.strip()}")
    return proc.stdout.strip()


def generate_calibration_fixture(out_dir: str) -> FixtureResult:
    """Build the labeled calculator repository under out_dir/repo."""
    repo = os.path.join(out_dir, "repo")
    if os.path.exists(repo):
        shutil.rmtree(repo)
    os.makedirs(repo)
    subprocess.run(
        ["git", "init", "-q", "-b", "main", repo],
        check=True, env=git_env(), capture_output=True,
    )

    commits: list[str] = []
    labels: list[int] = []
    previous: dict[str, str] = {}
    for index, step in enumerate(calibration_plan()):
        for path in set(previous) - set(step.tree):
            os.unlink(os.path.join(repo, path))
        for path, content in step.tree.items():
            if previous.get(path) != content:
                full = os.path.join(repo, path)
                os.makedirs(os.path.dirname(full) or repo, exist_ok=True)
                with open(full, "w", encoding="utf-8") as handle:
                    handle.write(content)
        previous = step.tree

        stamp = f"{_EPOCH + index * _STEP_SECONDS} +0000"
        env = git_env()
        env.update(
            GIT_AUTHOR_NAME=_AUTHOR, GIT_AUTHOR_EMAIL=_EMAIL,
            GIT_COMMITTER_NAME=_AUTHOR, GIT_COMMITTER_EMAIL=_EMAIL,
            GIT_AUTHOR_DATE=stamp, GIT_COMMITTER_DATE=stamp,
        )
        _run_git(repo, "add", "-A", env=env)
        _run_git(repo, "commit", "-q", "-m", step.message, env=env)
        commits.append(_run_git(repo, "rev-parse", "HEAD", env=env))
        labels.append(step.label)

    labels_path = os.path.join(out_dir, "labels.csv")
    write_labels(list(zip(commits, labels)), labels_path)
    return FixtureResult(repo, labels_path, commits, labels)


# -- synthetic load repository (for performance checks) -----------------------

_SYNTH_TEMPLATES = (
    """\
    public int combine{n}(int alpha{n}, int beta{n}) {{
        int gamma{n} = alpha{n} * {k} + beta{n};
        if (gamma{n} > {m}) {{
            gamma{n} = gamma{n} - alpha{n};
        }}
        return gamma{n};
    }}
""",
    """\
    public int tally{n}(int[] items{n}) {{
        int count{n} = 0;
        for (int item{n} : items{n}) {{
            count{n} += item{n} % {k};
        }}
        return count{n};
    }}
""",
    """\
    public String render{n}(int width{n}) {{
        StringBuilder canvas{n} = new StringBuilder();
        for (int col{n} = 0; col{n} < width{n}; col{n}++) {{
            canvas{n}.append(col{n} % {k} == 0 ? "x{n}" : "o{n}");
        }}
        return canvas{n}.toString();
    }}
""",
    """\
    public double scale{n}(double raw{n}) {{
        double factor{n} = {k}.5;
        while (raw{n} > factor{n}) {{
            raw{n} = raw{n} / {m}.0;
        }}
        return raw{n} * factor{n};
    }}
""",
)


def _synthetic_method(index: int) -> str:
    template = _SYNTH_TEMPLATES[index % len(_SYNTH_TEMPLATES)]
    return template.format(n=index, k=index % 7 + 2, m=index % 13 + 10)


def _synthetic_class(name: str, method_ids: list[int]) -> str:
    methods = "\n".join(_synthetic_method(i) for i in method_ids)
    return f"public class {name} {{\n{methods}}}\n"


def build_synthetic_repo(
    repo_dir: str, commits: int = 500, files: int = 200, seed: int = 7
) -> None:
    """Create a synthetic repository with git fast-import (objects only)."""
    import random

    rng = random.Random(seed)
    os.makedirs(repo_dir, exist_ok=True)
    subprocess.run(
        ["git", "init", "-q", "-b", "main", repo_dir],
        check=True, env=git_env(), capture_output=True,
    )
    stream: list[bytes] = []
    mark = 0
    method_ids: dict[int, list[int]] = {}
    next_method = 0

    def add_blob(content: str) -> int:
        nonlocal mark
        mark += 1
        raw = content.encode("utf-8")
        stream.append(b"blob\nmark :%d\ndata %d\n%s\n" % (mark, len(raw), raw))
        return mark

    def touch_file(file_id: int) -> bytes:
        nonlocal next_method
        ids = method_ids[file_id]
        if len(ids) < 56 and rng.random() < 0.8:
            ids.append(next_method)
        else:
            ids[rng.randrange(len(ids))] = next_method
        next_method += 1
        name = f"Widget{file_id:04d}"
        path = f"src/pkg{file_id % 20:02d}/{name}.java"
        blob = add_blob(_synthetic_class(name, ids))
        return b"M 100644 :%d %s\n" % (blob, path.encode())

    head_mark: int | None = None
    for seq in range(commits):
        changes: list[bytes] = []
        if seq < files:
            file_id = seq
            method_ids[file_id] = list(range(next_method, next_method + 26))
            next_method += 26
            name = f"Widget{file_id:04d}"
            path = f"src/pkg{file_id % 20:02d}/{name}.java"
            blob = add_blob(_synthetic_class(name, method_ids[file_id]))
            changes.append(b"M 100644 :%d %s\n" % (blob, path.encode()))
        else:
            for file_id in rng.sample(range(files), rng.randrange(1, 4)):
                changes.append(touch_file(file_id))

        mark += 1
        stamp = b"%d +0000" % (_EPOCH + seq * 60)
        message = f"synthetic change {seq}".encode()
        parts = [
            b"commit refs/heads/main\n",
            b"mark :%d\n" % mark,
            b"author %s <%s> %s\n" % (_AUTHOR.encode(), _EMAIL.encode(), stamp),
            b"committer %s <%s> %s\n" % (_AUTHOR.encode(), _EMAIL.encode(), stamp),
            b"data %d\n%s\n" % (len(message), message),
        ]
        if head_mark is not None:
            parts.append(b"from :%d\n" % head_mark)
        parts.extend(changes)
        parts.append(b"\n")
        stream.append(b"".join(parts))
        head_mark = mark

    proc = subprocess.run(
        ["git", "-C", repo_dir, "fast-import", "--quiet"],
        input=b"".join(stream),
        env=git_env(),
        capture_output=True,
    )
    if proc.returncode != 0:
        raise RuntimeError(
            f"fast-import failed: {proc.stderr.decode('utf-8', 'replace')}"
        )
