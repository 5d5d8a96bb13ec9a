"""Prompt text for the chat-model teacher.

Every template here is rendered deterministically and pinned by tests;
edits to wording are behavior changes, not copy edits.  The duplicated
"interactions will look like" lead-in in the fraction prompt is
intentional and load-bearing for transcript fidelity.
"""

from __future__ import annotations

from teachsim.domains.functions import predicate
from teachsim.domains.verbs import VERB_CLASSES
from teachsim.harness.conditions import FunctionCondition

# Chat-side names for verb classes; the domain uses "+ied" where prompts
# write "y_to_ied".
CHAT_CLASS_NAMES = {
    "+ed": "+ed",
    "+d": "+d",
    "+ied": "y_to_ied",
    "+consonant+ed": "+consonant+ed",
}
_DOMAIN_CLASS_NAMES = {chat: domain for domain, chat in CHAT_CLASS_NAMES.items()}

KEEP_LEARNING = "I would like to keep learning. Can I have another example?"
STOP_PREFIX = "I would like to stop learning now. "

_FORMAT_HINTS = {
    "fractions": "a/b+c/d=e/f for addition or a/b*c/d=e/f for multiplication",
    "functions": "wug(INPUT)=ANSWER",
    "verbs": "'LEMMA' is a 'CATEGORY' verb",
}


def chat_class(domain_name: str) -> str:
    return CHAT_CLASS_NAMES[domain_name]


def domain_class(chat_name: str) -> str:
    return _DOMAIN_CLASS_NAMES[chat_name]


def cannot_learn(task: str) -> str:
    return (
        "Sorry, I could not learn from that example. I can only learn from "
        f"examples that are formatted as {_FORMAT_HINTS[task]}."
    )


# --- fractions ---------------------------------------------------------------

# Candidate order matches the student-type listing order everywhere:
# candidate 1 is the mult-learner, candidate 2 the add-learner.
FRACTION_CANDIDATES = (
    "Students who perform addition correctly, but tend to incorrectly multiply "
    "only numerators when multiplying fractions, especially when the "
    "denominators are equal; if the denominators are not equal, the student "
    "sometimes makes common denominators and then multiplies the numerators",
    "Students who perform multiplication correctly, but tend to incorrectly add "
    "both numerators and denominators when adding fractions, especially when "
    "denominators are different",
)

FRACTION_DESCRIPTIONS = {
    "mult-learner": (
        "performs addition correctly, but tends to incorrectly multiply only "
        "numerators when multiplying fractions, especially when the denominators "
        "are equal; if the denominators are not equal, the student sometimes "
        "makes common denominators and then multiplies the numerators"
    ),
    "add-learner": (
        "performs multiplication correctly, but tends to incorrectly add both "
        "numerators and denominators when adding fractions, especially when "
        "denominators are different"
    ),
}

_FRACTION_INSTRUCTIONS = """Please make sure to follow these instructions:
- You are only allowed to give students example fraction problems, and ask them to guess the outputs. You may not explain any concepts to them directly, or ask any other questions. Anything other than example fraction problems and answers will be ignored by the student.
- The student has not learned how to simplify fractions yet, so please do not simplify the fractions in your examples. Leave the answers in their unsimplified form. The student will also not simplify their answer.
- Please only use fractions with positive numerators and denominators.
- Do not teach arithmetic with mixed numbers or whole numbers.
- Only teach fraction addition and multiplication. Please format input/output examples as: a/b+c/d=e/f for addition or a/b*c/d=e/f for multiplication.
- Keep teaching with fraction problems and outputs until the student says they would like to stop, even if you think you have covered the full input range.

For example, your interactions will look like the following, where capital words indicate placeholders for actual verb lemmas and categories:

Your interactions will look like the following (where letters are placeholders for actual numbers):
System: What is a/b+c/d?
User: a/b+c/d=e/f
System: That's [correct/incorrect]. a/b+c/d=x/y. What is g/h+i/j?

Please start by asking the student for their guess on a fraction example."""


def fraction_system_prompt(student_type: str | None = None) -> str:
    opening = (
        "You are GPT-teacher, an expert teacher. Your goal is to teach a student "
        "how to multiply and add fractions as efficiently as possible with "
        "helpful examples."
    )
    if student_type is not None:
        about = (
            "You will be interacting with a student who has spent some time with "
            "fraction arithmetic but still has some misconceptions about how it "
            f"works. The student you will be interacting with is a student who "
            f"{FRACTION_DESCRIPTIONS[student_type]}."
        )
    else:
        about = (
            "You will be interacting with a student who has spent some time with "
            "fraction arithmetic but still has some misconceptions about how it "
            "works. There are 2 kinds of students:\n"
            f"1) {FRACTION_CANDIDATES[0]}\n"
            f"2) {FRACTION_CANDIDATES[1]}\n"
            "You should try to figure out which kind of student you are "
            "interacting with and then teach them accordingly."
        )
    return "\n\n".join([opening, about, _FRACTION_INSTRUCTIONS])


# --- functions ---------------------------------------------------------------


def _function_candidates(condition: FunctionCondition) -> tuple[str, str]:
    target = condition.target_concept()
    spurious_f = predicate(condition.spurious_predicate).describe()
    target_f = target.predicate.describe()
    return (
        f"Students who correctly think that b={target.intercept} but incorrectly "
        f"think wug is undefined when inputs are {spurious_f}",
        f"Students who correctly think that wug is undefined when inputs are "
        f"{target_f} but incorrectly think that b={condition.spurious_intercept}",
    )


def _function_known_description(condition: FunctionCondition, student_type: str) -> str:
    target = condition.target_concept()
    if student_type == "predicate-learner":
        return (
            f"correctly thinks that b={target.intercept} but incorrectly thinks "
            f"that wug is undefined when inputs are "
            f"{predicate(condition.spurious_predicate).describe()}"
        )
    if student_type == "intercept-learner":
        return (
            f"correctly thinks that wug is undefined when inputs are "
            f"{target.predicate.describe()} but incorrectly thinks that "
            f"b={condition.spurious_intercept}"
        )
    raise ValueError(f"unknown function student type: {student_type!r}")


_FUNCTION_DOMAIN = """The student knows that wug is undefined when the input is one of the following:
- prime
- positive
- even
- odd
- divisible by n for n between 3 and 20 (inclusive)
- greater than n for n between 1 and 20 (inclusive)"""

_FUNCTION_EXAMPLE_BLOCK = """For example, your interactions will look like the following, where capital words indicate placeholders for actual numbers:

Your interactions will look like the following:
System: What is wug(INPUT)?
User: wug(INPUT)=GUESS
System: That's [correct/incorrect]. wug(INPUT)=ANSWER. What is wug(NEW INPUT)?

Please start by asking the student for their guess on an input."""


def function_system_prompt(
    condition: FunctionCondition, student_type: str | None = None
) -> str:
    target = condition.target_concept()
    opening = (
        "You are GPT-teacher, an expert teacher. Your goal is to teach a student "
        "what a mystery machine called wug does. This machine takes in numbers "
        "and outputs numbers. However, it only works for some numbers and is "
        "undefined for others. Your goal is to teach the student on what inputs "
        "wug is undefined, and when it is defined, what it does. You should do "
        "so as efficiently as possible with helpful input/output examples, such "
        "as edge cases."
    )
    machine = (
        f"The wug machine works as follows: wug(x) is undefined when x is "
        f"{target.predicate.describe()}. When defined, wug(x) computes "
        f"{target.formula()}."
    )
    student_background = (
        "You're going to be interacting with a student who is learning how wug "
        "works. The student knows that wug is sometimes undefined. The student "
        "also knows that when wug is defined, it computes something of the form "
        f"a*x+b. In the real wug machine, a={target.slope} and "
        f"b={target.intercept}. However, the student does not know this. The "
        "student only knows that a is a constant number between -5 and 5 "
        "(inclusive) and that b is a constant number between 1 and 9 (inclusive)."
    )
    if student_type is not None:
        exposure = (
            "Students have varying previous exposure to wug, and so they "
            "understand different parts of how wug works. The student you will "
            "be interacting with is a student who "
            f"{_function_known_description(condition, student_type)}."
        )
        range_rule = (
            "- wug only works for numbers between -20 to 20 (inclusive), so "
            "restrict the inputs you choose to that range. Any inputs outside of "
            "that range will be ignored by the student."
        )
    else:
        first, second = _function_candidates(condition)
        exposure = (
            "Students have varying previous exposure to wug, and so they "
            "understand different parts of how wug works. There are two kinds of "
            f"students:\n1) {first}\n2) {second}"
        )
        range_rule = (
            "- wug is only defined for numbers between -20 to 20 (inclusive), so "
            "restrict the inputs you choose to that range."
        )
    instructions = "\n".join(
        [
            "Please make sure to follow these instructions:",
            "- You are only allowed to give students example inputs, and ask "
            "them to guess outputs. You may not explain aspects of the concept "
            "to them directly, or ask any other questions. Anything other than "
            "inputs and outputs will be ignored by the student.",
            "- Please format input/output examples as: wug(INPUT)=ANSWER",
            range_rule,
            "- Keep teaching with inputs and outputs until the student says "
            "they would like to stop, even if you think you have covered the "
            "full input range.",
        ]
    )
    return "\n\n".join(
        [
            opening,
            machine,
            student_background,
            _FUNCTION_DOMAIN,
            exposure,
            instructions,
            _FUNCTION_EXAMPLE_BLOCK,
        ]
    )


# --- verbs -------------------------------------------------------------------

_VERB_CATEGORY_BLOCK = """Specifically, your goal is to teach students about four categories of past tense verbs:
- '+ed': add 'ed' to the verb lemma
- '+d': add 'd' to the verb lemma
- 'y_to_ied': if the verb lemma ends in a 'y', replace the 'y' with 'ied'
- '+consonant+ed': if the verb lemma ends in a consonant, double the last consonant and add 'ed'"""

_VERB_INSTRUCTIONS = """Please make sure to follow these instructions:
- You are only allowed to give students example verb lemmas, and ask them to guess verb categories. You may not explain any concepts to them directly, or ask any other questions. Anything other than example verb lemmas and categories will be ignored by the student.
- Please format input/output examples as: 'LEMMA' is a 'CATEGORY' verb
- Keep teaching until the student says they would like to stop, even if you think they understand the verb categories.
- You are only allowed to teach students about verbs in the four categories ('+ed', '+d', 'y_to_ied', and '+consonant+ed'). Please do not give examples from other categories, like irregular verbs."""

_VERB_EXAMPLE_BLOCK = """For example, your interactions will look like the following, where capital words indicate placeholders for actual verb lemmas and categories:

Your interactions will look like the following:
System: What type of verb is 'LEMMA'?
User: 'LEMMA' is a 'CATEGORY' verb
System: That's [correct/incorrect]. 'LEMMA' is a 'CATEGORY' verb. What type of verb is 'LEMMA'?

Please start by asking the student for their guess on a lemma."""


def verb_system_prompt(unknown_class: str | None = None) -> str:
    opening = (
        "You are GPT-teacher, an expert teacher. Your goal is to teach a student "
        "how to conjugate English past tense verbs as efficiently as possible "
        "with helpful examples."
    )
    if unknown_class is not None:
        if unknown_class not in VERB_CLASSES:
            raise ValueError(f"unknown verb class: {unknown_class!r}")
        confusion = (
            "Different students have different confusion points, but each "
            "student has one verb category that they are the least familiar "
            "with. The student you will be interacting with is the least "
            f"familiar with the '{chat_class(unknown_class)}' category."
        )
    else:
        confusion = (
            "Different students have different confusion points, but each "
            "student has one verb category that they are the least familiar "
            "with. While teaching the student, you should aim to infer what verb "
            "category they are the least familiar with in order to teach and "
            "correct their misconceptions most efficiently."
        )
    return "\n\n".join(
        [opening, _VERB_CATEGORY_BLOCK, confusion, _VERB_INSTRUCTIONS, _VERB_EXAMPLE_BLOCK]
    )


# --- type queries ------------------------------------------------------------


def type_query(task: str, condition: FunctionCondition | None = None) -> str:
    if task == "verbs":
        return (
            "Based on this interaction, which verb category do you think I was "
            "the least familiar with at the start of this teaching session?"
        )
    if task == "fractions":
        first, second = FRACTION_CANDIDATES
    elif task == "functions":
        if condition is None:
            raise ValueError("function type query needs the condition")
        first, second = _function_candidates(condition)
    else:
        raise ValueError(f"unknown task: {task!r}")
    return (
        "Based on this interaction, which kind of student do you think I was at "
        f"the start of this teaching session:\n1) {first}\n2) {second}\n\n"
        "Please select (1) or (2)."
    )
