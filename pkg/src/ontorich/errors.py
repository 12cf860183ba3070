"""Error types shared across the workbench modules."""


class OntoRichError(Exception):
    """Base class for all domain errors."""


class ParseError(OntoRichError):
    def __init__(self, line, column, message):
        self.line = line
        self.column = column
        self.message = message
        super().__init__(f"line {line}, column {column}: {message}")


class UnknownPrefix(ParseError):
    def __init__(self, line, column, prefix):
        self.prefix = prefix
        super().__init__(line, column, f"unknown prefix '{prefix}'")


class DanglingReference(OntoRichError):
    pass


class DuplicateEntity(OntoRichError):
    pass


class CyclicHierarchy(OntoRichError):
    def __init__(self, cycle):
        self.cycle = list(cycle)
        super().__init__("subclass cycle: " + " -> ".join(self.cycle))


class EmptyOntology(OntoRichError):
    pass


class EmptyKnowledgeBase(OntoRichError):
    pass


class UnknownClass(OntoRichError):
    pass


class StoreCorrupt(OntoRichError):
    pass


class EmptyCorpus(OntoRichError):
    pass


class NotAWord(OntoRichError):
    pass


class LexiconFormatError(OntoRichError):
    def __init__(self, line, message):
        self.line = line
        super().__init__(f"line {line}: {message}")


class DanglingPointer(OntoRichError):
    def __init__(self, synset_id, target):
        self.synset_id = synset_id
        self.target = target
        super().__init__(f"synset '{synset_id}' points at missing id '{target}'")


class HypernymCycle(OntoRichError):
    pass


class UnknownLemma(OntoRichError):
    pass


class InvalidPattern(OntoRichError):
    pass


class XmlError(OntoRichError):
    def __init__(self, line, message):
        self.line = line
        super().__init__(f"line {line}: {message}")


class NotRss(OntoRichError):
    pass


class FetchError(OntoRichError):
    def __init__(self, status):
        self.status = status
        super().__init__(f"fetch failed with status {status}")


class WorkspaceLocked(OntoRichError):
    pass


class StaleRevision(OntoRichError):
    def __init__(self, supplied, current):
        self.supplied = supplied
        self.current = current
        super().__init__(f"revision {supplied} is stale (current {current})")
