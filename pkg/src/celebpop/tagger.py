"""Deterministic rule/suffix part-of-speech tagger over the 12 universal tags.

Closed-class words come from fixed lists; open-class words are guessed from
suffixes, falling back to NOUN. Good enough to compare tag-distribution
entropy across authors, not to parse sentences.
"""

UNIVERSAL_TAGS = (
    "NOUN", "VERB", "ADJ", "ADV", "PRON", "DET", "ADP", "NUM", "CONJ", "PRT", ".", "X",
)

_CLOSED = {
    "PRON": """i me my mine myself we us our ours ourselves you your yours yourself
        yourselves he him his himself she her hers herself it its itself they them
        their theirs themselves who whom whose what which someone anyone everyone
        nobody somebody anybody everybody something anything everything nothing""",
    "DET": """a an the this that these those each every some any no another either
        neither all both such""",
    "ADP": """of in on at by for with from about into over under after before through
        between during without within against above below around across along among
        behind beyond near since toward towards upon via like than""",
    "CONJ": "and but or nor yet so because although though while whereas unless if",
    "PRT": "to not n't up off out away 's",
    "NUM": """one two three four five six seven eight nine ten eleven twelve twenty
        thirty forty fifty hundred thousand million billion first second third""",
    "VERB": """is am are was were be been being have has had having do does did done
        will would can could shall should may might must get got go went gone say
        said make made know knew think thought see saw seen come came take took want
        need let give gave tell told feel felt love hate miss wish hope watch meet
        win won lose lost play""",
    "ADV": """very just now then here there when where why how also too again always
        never ever often still already soon today tomorrow yesterday tonight maybe
        perhaps really quite rather almost even only well back together""",
    "ADJ": """good great best better new old big small happy sad proud nice sweet cool
        bad worst amazing awesome beautiful lovely huge super special real true
        ready sure glad many much few more most other same own last next""",
    "X": "rt lol omg haha hahaha lmao wtf btw idk amp",
}

_WORD_TAG = {}
for _tag, _words in _CLOSED.items():
    for _w in _words.split():
        _WORD_TAG.setdefault(_w, _tag)

# checked in order; first match wins
_SUFFIX_RULES = (
    ("ly", "ADV"),
    ("ing", "VERB"),
    ("ed", "VERB"),
    ("ize", "VERB"),
    ("ise", "VERB"),
    ("ify", "VERB"),
    ("ate", "VERB"),
    ("ous", "ADJ"),
    ("ful", "ADJ"),
    ("ive", "ADJ"),
    ("able", "ADJ"),
    ("ible", "ADJ"),
    ("less", "ADJ"),
    ("ish", "ADJ"),
    ("est", "ADJ"),
    ("ic", "ADJ"),
    ("al", "ADJ"),
    ("tion", "NOUN"),
    ("sion", "NOUN"),
    ("ment", "NOUN"),
    ("ness", "NOUN"),
    ("ity", "NOUN"),
    ("ship", "NOUN"),
    ("er", "NOUN"),
    ("or", "NOUN"),
    ("s", "NOUN"),
)


class RuleTagger:
    """Callable ``token -> tag``."""

    tagset = UNIVERSAL_TAGS

    def __call__(self, token: str) -> str:
        tag = _WORD_TAG.get(token)
        if tag is not None:
            return tag
        if token.isdigit() or token.replace(",", "").replace(".", "").isdigit():
            return "NUM"
        if not token.isalpha():
            return "X"
        if len(token) > 3:
            for suffix, tag in _SUFFIX_RULES:
                if token.endswith(suffix):
                    return tag
        return "NOUN"
