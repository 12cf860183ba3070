"""RSS 2.0 ingestion: fetch feeds per domain, deduplicate items by guid,
and turn stored items into corpus documents.

Only RSS 2.0 is accepted; an Atom document is rejected with NotRss rather
than half-parsed. The item store is an append-only log with the guid
index rebuilt on open, so replaying a partial sync converges to the same
final store.
"""

from __future__ import annotations

import hashlib
import html
import re
import urllib.error
import urllib.request
import xml.etree.ElementTree as ET
from dataclasses import dataclass, field
from email.utils import parsedate_to_datetime
from pathlib import Path

from .corpus import Corpus, Document
from .errors import FetchError, NotRss, XmlError

_TAG_RE = re.compile(r"<[^>]+>")


@dataclass(frozen=True)
class FeedSpec:
    url: str
    domain: str
    poll_interval: int = 3600

    def __post_init__(self):
        if not self.url:
            raise ValueError("feed url must be non-empty")
        if self.poll_interval < 60:
            raise ValueError("poll_interval must be >= 60 seconds")


@dataclass(frozen=True)
class FeedItem:
    guid: str
    title: str
    description: str
    link: str
    pub_date: object  # datetime or None
    domain: str = ""


def strip_html(text: str) -> str:
    """Reduce an HTML fragment to plain text: drop tags, decode entities."""
    return html.unescape(_TAG_RE.sub(" ", text)).strip()


def _text(elem, tag) -> str:
    child = elem.find(tag)
    if child is None or child.text is None:
        return ""
    return child.text.strip()


def parse_rss(xml_text: str) -> list:
    """Parse an RSS 2.0 document into FeedItems in document order."""
    try:
        root = ET.fromstring(xml_text)
    except ET.ParseError as exc:
        raise XmlError(exc.position[0], str(exc)) from exc
    if root.tag != "rss" or root.find("channel") is None:
        raise NotRss(f"root element <{root.tag}> is not an RSS 2.0 channel")
    items = []
    for item in root.find("channel").iter("item"):
        title = _text(item, "title")
        link = _text(item, "link")
        description = strip_html(_text(item, "description"))
        pub_raw = _text(item, "pubDate")
        guid = _text(item, "guid") or link
        if not guid:
            guid = hashlib.sha1((title + "|" + pub_raw).encode("utf-8")).hexdigest()
        pub_date = None
        if pub_raw:
            try:
                pub_date = parsedate_to_datetime(pub_raw)
            except (TypeError, ValueError):
                pub_date = None
        items.append(FeedItem(guid, title, description, link, pub_date))
    return items


def default_http_get(url: str):
    """(status, body) getter over urllib; supports file:// for local
    fixture feeds."""
    try:
        with urllib.request.urlopen(url) as resp:
            # file:// responses have no status; treat them as success
            status = getattr(resp, "status", None) or 200
            return status, resp.read().decode("utf-8", errors="replace")
    except urllib.error.HTTPError as exc:
        return exc.code, ""


def fetch_feed(spec: FeedSpec, http_get=default_http_get) -> list:
    """Fetch and parse one feed; items are stamped with the spec's domain."""
    status, body = http_get(spec.url)
    if not 200 <= status < 300:
        raise FetchError(status)
    items = parse_rss(body)
    return [
        FeedItem(i.guid, i.title, i.description, i.link, i.pub_date, spec.domain)
        for i in items
    ]


# --- item store ---------------------------------------------------------

def _escape(value: str) -> str:
    return value.replace("\\", "\\\\").replace("\t", "\\t").replace("\n", "\\n")


def _unescape(value: str) -> str:
    out = []
    i = 0
    while i < len(value):
        c = value[i]
        if c == "\\" and i + 1 < len(value):
            nxt = value[i + 1]
            out.append({"t": "\t", "n": "\n", "\\": "\\"}.get(nxt, nxt))
            i += 2
        else:
            out.append(c)
            i += 1
    return "".join(out)


class ItemStore:
    """Append-only tab-separated log of feed items, one per line."""

    def __init__(self, path):
        self.path = Path(path)
        self.path.parent.mkdir(parents=True, exist_ok=True)
        self._guids = set()
        self._items = []
        if self.path.exists():
            with open(self.path, encoding="utf-8") as fh:
                for line in fh:
                    line = line.rstrip("\n")
                    if not line:
                        continue
                    fields = [_unescape(f) for f in line.split("\t")]
                    guid, title, description, link, pub_raw, domain = fields
                    if guid in self._guids:
                        continue
                    self._guids.add(guid)
                    pub = None
                    if pub_raw:
                        try:
                            pub = parsedate_to_datetime(pub_raw)
                        except (TypeError, ValueError):
                            pub = None
                    self._items.append(FeedItem(guid, title, description, link, pub, domain))

    def __contains__(self, guid):
        return guid in self._guids

    def items(self, domain=None):
        if domain is None:
            return list(self._items)
        return [i for i in self._items if i.domain == domain]

    def append(self, item: FeedItem) -> bool:
        """Store an item; returns False (no write) for a seen guid."""
        if item.guid in self._guids:
            return False
        pub = item.pub_date.strftime("%a, %d %b %Y %H:%M:%S %z") if item.pub_date else ""
        line = "\t".join(_escape(f) for f in (
            item.guid, item.title, item.description, item.link, pub, item.domain))
        with open(self.path, "a", encoding="utf-8") as fh:
            fh.write(line + "\n")
        self._guids.add(item.guid)
        self._items.append(item)
        return True


@dataclass
class SyncReport:
    new: int = 0
    duplicate: int = 0
    failed: list = field(default_factory=list)  # (url, error message)


def sync(store: ItemStore, specs, http_get=default_http_get) -> SyncReport:
    """Fetch every spec; one bad feed never aborts the others."""
    report = SyncReport()
    for spec in specs:
        try:
            items = fetch_feed(spec, http_get)
        except Exception as exc:
            report.failed.append((spec.url, str(exc)))
            continue
        for item in items:
            if store.append(item):
                report.new += 1
            else:
                report.duplicate += 1
    return report


def load_feed_specs(path) -> list:
    """feeds.conf: url<TAB>domain<TAB>poll_interval, one per line."""
    specs = []
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            line = line.rstrip("\n")
            if not line.strip() or line.startswith("#"):
                continue
            url, domain, interval = line.split("\t")
            specs.append(FeedSpec(url, domain, int(interval)))
    return specs


def _doc_id_for(guid: str) -> str:
    return "feed-" + hashlib.sha1(guid.encode("utf-8")).hexdigest()[:12]


def items_to_corpus(store: ItemStore, domain: str, corpus: Corpus) -> list:
    """Convert stored items of one domain into documents appended to the
    corpus; returns the newly created documents. Idempotent per guid."""
    existing = corpus.ids()
    created = []
    for item in store.items(domain):
        doc_id = _doc_id_for(item.guid)
        if doc_id in existing:
            continue
        body = item.title + "\n\n" + item.description
        doc = Document(doc_id, item.title, body, source=f"Feed:{item.domain}")
        corpus.add(doc)
        created.append(doc)
    return created
