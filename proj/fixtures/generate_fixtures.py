#!/usr/bin/env python3
"""Regenerates the snapshot fixtures and the fixture world.

Run from anywhere; writes next to this file. Output is deterministic.
"""
import json
import pathlib

ROOT = pathlib.Path(__file__).resolve().parent
DESKTOP = (1366, 768)
MOBILE = (340, 695)


def n(node_id, tag, text="", bbox=(0, 0, 300, 20), children=(), z=None, position="static",
      attr="", hidden=False, invisible=False, opacity=1.0, scripted=False, click=False,
      href=None, frame=None):
    node = {
        "node_id": node_id, "tag": tag, "own_text": text, "attr_text": attr,
        "display_none": hidden, "visibility_hidden": invisible, "opacity": opacity,
        "bbox": list(bbox), "z_index": "auto" if z is None else z, "position": position,
        "is_scripted_text": scripted, "has_click_handler": click,
        "children": list(children),
    }
    if href is not None:
        node["href"] = href
    if frame is not None:
        node["iframe_doc"] = frame
    return node


def hide(node):
    """A display:none subtree, as the probe reports it."""
    node["display_none"] = True
    for child in node["children"]:
        hide(child)
    return node


def doc(body_children, url="http://fixture.test/", viewport=DESKTOP, header=True):
    body = n(2, "body", bbox=(0, 0, viewport[0], 2000), children=body_children)
    root = n(1, "html", bbox=(0, 0, viewport[0], 2000), children=[body])
    out = {}
    if header:
        out = {"format": "cookiescope-snapshot", "version": 1}
    out.update({"url": url, "captured_at": "2021-11-16T12:00:00Z",
                "viewport": {"width": viewport[0], "height": viewport[1]}, "root": root})
    return out


def content(start=3):
    """Ordinary page content without any banner word."""
    return [
        n(start, "h1", "Morning headlines", (20, 20, 600, 40)),
        n(start + 1, "p", "Markets opened higher as traders weighed the latest figures.", (20, 70, 600, 40)),
    ]


def fixed_banner(base, text, buttons, bbox=(0, 600, 1366, 168), z=None, position="fixed"):
    kids = [n(base + 1, "p", text, (20, bbox[1] + 10, 900, 40))]
    row = [n(base + 3 + i, "button", b, (20 + 160 * i, bbox[1] + 90, 150, 40), click=True)
           for i, b in enumerate(buttons)]
    kids.append(n(base + 2, "div", "", (20, bbox[1] + 80, 700, 60), children=row))
    return n(base, "div", "", bbox, children=kids, z=z, position=position)


def write(path, obj):
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(json.dumps(obj, ensure_ascii=False, indent="\t") + "\n", encoding="utf-8")


# --------------------------------------------------------------- detection

def detection_fixtures():
    cases = []

    def add(name, snapshot, banner, tags, frame_path=(), language="en"):
        cases.append((name, snapshot, {"file": name + ".json", "expected_banner": banner,
                                       "expected_frame_path": list(frame_path), "tags": tags,
                                       "language": language}))

    add("fixed_bottom_bar",
        doc(content() + [fixed_banner(10, "We use cookies to improve your experience.", ["Accept", "Settings"])]),
        10, ["fixed-position"])

    add("positive_zindex_modal",
        doc(content() + [n(10, "div", "", (383, 200, 600, 300), z=1000, position="absolute", children=[
            n(11, "div", "", (383, 200, 600, 300), children=[
                n(12, "h2", "Your privacy matters", (400, 210, 560, 30)),
                n(13, "p", "We and our partners ask for your consent to store information.", (400, 250, 560, 60)),
                n(14, "button", "I agree", (400, 330, 120, 40), click=True),
            ])])]),
        11, ["positive-z-index", "descent"])

    frame_doc = doc([n(3, "div", "", (0, 0, 800, 200), position="fixed", children=[
        n(4, "p", "This site uses cookies for analytics.", (10, 10, 600, 40)),
        n(5, "button", "Accept cookies", (10, 60, 150, 40), click=True),
    ])], url="http://cmp.fixture.test/frame", viewport=(800, 200), header=False)
    add("visible_iframe_banner",
        doc(content() + [n(20, "iframe", "", (283, 560, 800, 200), position="fixed", z=10, frame=frame_doc)]),
        3, ["iframe"], frame_path=[20])

    add("invisible_decoy",
        doc(content() + [hide(n(8, "div", "", (0, 0, 1366, 100), position="fixed", children=[
            n(9, "p", "Cookie consent required", (10, 10, 500, 30))]))] +
            [fixed_banner(10, "This website uses cookies.", ["Accept all", "Reject all"])]),
        10, ["decoy", "display-none"])

    add("visibility_hidden_decoy",
        doc(content() + [n(8, "div", "", (0, 0, 1366, 100), position="fixed", invisible=True, children=[
            n(9, "p", "Privacy policy updated", (10, 10, 500, 30), invisible=True)])] +
            [fixed_banner(10, "We value your privacy and use cookies.", ["Agree"])]),
        10, ["decoy", "visibility-hidden"])

    add("transparent_decoy",
        doc(content() + [n(8, "div", "", (0, 0, 1366, 100), position="fixed", opacity=0.0, children=[
            n(9, "p", "Accept our cookie policy", (10, 10, 500, 30), opacity=0.0)])] +
            [fixed_banner(10, "Cookies help us deliver our services.", ["Accept"])]),
        10, ["decoy", "opacity"])

    add("negative_zindex_decoy",
        doc(content() + [n(8, "div", "", (0, 100, 1366, 100), position="relative", z=-1, children=[
            n(9, "p", "Our cookie policy explains how we use data.", (10, 110, 600, 30))])] +
            [fixed_banner(10, "We use cookies to personalise ads.", ["Accept"])]),
        10, ["decoy", "negative-z-index"])

    add("inherited_negative_zindex_decoy",
        doc(content() + [n(8, "div", "", (0, 100, 1366, 300), position="absolute", z=-5, children=[
            n(9, "section", "", (0, 100, 1366, 300), children=[
                n(30, "p", "Consent and privacy notes", (10, 110, 600, 30))])])] +
            [fixed_banner(10, "Cookies keep this site running.", ["Accept"])]),
        10, ["decoy", "negative-z-index"])

    add("table_decoy",
        doc(content() + [n(8, "table", "", (20, 150, 800, 200), children=[
            n(9, "tr", "", (20, 150, 800, 40), children=[
                n(30, "td", "Cookie name", (20, 150, 200, 40)),
                n(31, "td", "Privacy policy reference", (220, 150, 400, 40))])])] +
            [fixed_banner(10, "Accept cookies to continue.", ["Accept"])]),
        10, ["decoy", "table"])

    add("scripted_text_decoy",
        doc([n(8, "script", "window.cookieConsent = {accept: true};", (0, 0, 10, 10), scripted=True)] +
            content() + [fixed_banner(10, "We use cookies.", ["Accept"])]),
        10, ["decoy", "script"])

    add("offscreen_decoy",
        doc(content() + [n(8, "div", "", (-4000, 0, 500, 100), position="absolute", children=[
            n(9, "p", "cookies", (-4000, 0, 500, 30))])] +
            [fixed_banner(10, "This site uses cookies.", ["Accept"])]),
        10, ["decoy", "offscreen"])

    add("zero_size_decoy",
        doc(content() + [n(8, "div", "", (0, 0, 0, 0), children=[
            n(9, "span", "privacy", (0, 0, 0, 0))])] +
            [fixed_banner(10, "We use cookies.", ["I accept"])]),
        10, ["decoy", "zero-size"])

    add("body_anchor_fallback",
        doc(content() + [n(10, "div", "", (0, 200, 1366, 200), children=[
            n(11, "p", "We use cookies on this website.", (20, 210, 800, 40)),
            n(12, "div", "", (20, 260, 400, 50), children=[
                n(13, "button", "Accept", (20, 260, 120, 40), click=True)])])]),
        10, ["body-anchor"])

    add("nested_specific_element",
        doc(content() + [n(10, "div", "", (0, 568, 1366, 200), position="fixed", z=9999, children=[
            n(11, "div", "", (0, 568, 1366, 200), children=[
                n(12, "div", "", (100, 578, 1166, 180), children=[
                    n(13, "p", "We use cookies and similar technologies.", (110, 588, 900, 40)),
                    n(14, "div", "", (110, 640, 600, 60), children=[
                        n(15, "button", "Accept all", (110, 650, 150, 40), click=True),
                        n(16, "button", "Manage preferences", (270, 650, 200, 40), click=True)])])])])]),
        12, ["descent"])

    add("sticky_top_banner",
        doc([n(10, "div", "", (0, 0, 1366, 80), position="sticky", z=50, children=[
            n(11, "span", "By using this site you agree to our cookie policy.", (20, 20, 700, 30)),
            n(12, "a", "Privacy notice", (740, 20, 140, 30), href="http://fixture.test/privacy")])] + content(20)),
        10, ["positive-z-index"])

    add("single_word_node",
        doc(content() + [n(10, "div", "", (0, 700, 1366, 68), position="fixed", children=[
            n(11, "p", "This site uses cookies.", (20, 710, 400, 40)),
            n(12, "button", "OK", (440, 710, 80, 40), click=True)])]),
        11, ["single-word-node"])

    add("overlay_and_modal",
        doc(content() + [
            n(10, "div", "", (0, 0, 1366, 768), position="fixed", z=999),
            n(11, "div", "", (383, 184, 600, 400), position="fixed", z=1000, children=[
                n(12, "h2", "We value your privacy", (400, 200, 560, 30)),
                n(13, "p", "Select how we and our partners may use cookies.", (400, 240, 560, 60)),
                n(14, "button", "Accept", (400, 320, 120, 40), click=True)])]),
        11, ["modal", "overlay"])

    add("zindex_inside_fixed_wrapper",
        doc(content() + [n(10, "div", "", (0, 0, 1366, 768), position="fixed", children=[
            n(11, "div", "", (0, 568, 1366, 200), children=[
                n(12, "p", "Cookies are used on this site.", (20, 578, 600, 40)),
                n(13, "button", "Agree", (20, 630, 120, 40), click=True)])])]),
        11, ["fixed-position", "descent"])

    add("banner_before_footer_links",
        doc([fixed_banner(10, "We use cookies to analyse traffic.", ["Accept all", "Decline"])] + content(20) +
            [n(30, "footer", "", (0, 1900, 1366, 100), children=[
                n(31, "a", "Privacy policy", (20, 1910, 200, 30), href="http://fixture.test/privacy")])]),
        10, ["fixed-position", "footer"])

    add("iframe_main_precedence",
        doc(content() + [fixed_banner(10, "We use cookies.", ["Accept"]),
                         n(20, "iframe", "", (0, 0, 400, 200), frame=doc([
                             n(3, "p", "Cookie consent inside frame", (0, 0, 300, 30))],
                             viewport=(400, 200), header=False))]),
        10, ["iframe"])

    add("nested_iframes",
        doc(content() + [n(20, "iframe", "", (0, 468, 1366, 300), position="fixed", frame=doc([
            n(5, "iframe", "", (0, 0, 1366, 300), frame=doc([
                n(3, "div", "", (0, 0, 1366, 300), position="fixed", children=[
                    n(4, "p", "Your privacy choices", (10, 10, 400, 30)),
                    n(6, "button", "Accept", (10, 60, 120, 40), click=True)])],
                viewport=(1366, 300), header=False))],
            viewport=(1366, 300), header=False))]),
        3, ["iframe", "nested"], frame_path=[20, 5])

    # Cross-origin frame: the probe cannot read the document.
    add("cross_origin_iframe",
        doc(content() + [n(20, "iframe", "", (0, 568, 1366, 200), position="fixed")]),
        None, ["iframe", "cross-origin", "not-detected"])

    add("hidden_iframe_banner",
        doc(content() + [n(20, "iframe", "", (0, 568, 1366, 200), hidden=True, frame=doc([
            n(3, "div", "", (0, 0, 1366, 200), position="fixed", children=[
                n(4, "p", "We use cookies.", (10, 10, 400, 30))])],
            viewport=(1366, 200), header=False))]),
        None, ["iframe", "not-detected"])

    # Shadow-root content is not part of the serialized tree.
    add("shadow_dom_banner",
        doc(content() + [n(10, "cmp-banner", "", (0, 568, 1366, 200), position="fixed", z=100)]),
        None, ["shadow-dom", "not-detected"])

    add("no_banner",
        doc(content() + [n(10, "div", "", (0, 300, 1366, 200), children=[
            n(11, "p", "Subscribe to the newsletter for daily updates.", (20, 310, 600, 40))])]),
        None, ["negative"])

    add("mobile_bottom_sheet",
        doc([n(3, "h1", "Headlines", (10, 10, 320, 30)),
             n(10, "div", "", (0, 495, 340, 200), position="fixed", z=20, children=[
                 n(11, "p", "We use cookies to give you the best experience.", (10, 505, 320, 60)),
                 n(12, "button", "Accept", (10, 575, 150, 40), click=True),
                 n(13, "button", "Reject", (180, 575, 150, 40), click=True)])], viewport=MOBILE),
        10, ["mobile", "fixed-position"])

    non_english = [
        ("de", "german_banner", "Wir verwenden Cookies. Mehr dazu in unserer Datenschutzerklärung.", ["Alle akzeptieren", "Ablehnen"]),
        ("fr", "french_banner", "Nous respectons votre confidentialité et utilisons des traceurs.", ["Accepter", "Refuser"]),
        ("es", "spanish_banner", "Utilizamos tecnologías propias. Consulta nuestra política de privacidad.", ["Aceptar"]),
        ("it", "italian_banner", "Informativa: questo sito utilizza tecnologie di tracciamento.", ["Accetta"]),
        ("ja", "japanese_banner", "当サイトではクッキーを使用しています。", ["同意する"]),
        ("ru", "russian_banner", "Мы обновили политику конфиденциальности.", ["Принять"]),
        ("zh", "chinese_banner", "我们使用技术来改善体验，请阅读隐私政策。", ["接受"]),
        ("pt", "portuguese_banner", "Respeitamos a sua privacidade.", ["Aceitar"]),
        ("sv", "swedish_banner", "Vi behöver ditt samtycke för att använda tekniker.", ["Acceptera"]),
        ("tr", "turkish_banner", "Bu sitede çerez kullanılmaktadır.", ["Kabul et"]),
    ]
    for lang, name, text, buttons in non_english:
        add(name, doc(content() + [fixed_banner(10, text, buttons)]), 10, ["non-english"], language=lang)

    return cases


# ------------------------------------------------------------- interaction

def interaction_fixtures():
    cases = []

    def add(name, snapshot, mode, steps, note="", cmp=None):
        entry = {"file": name + ".json", "mode": mode, "expected_steps": steps, "expected_note": note}
        if cmp is not None:
            entry["cmp"] = cmp
        cases.append((name, snapshot, entry))

    # Long sentence containing "accept" next to a bare "accept".
    add("two_paragraph_accept",
        doc(content() + [n(10, "div", "", (0, 568, 1366, 200), position="fixed", children=[
            n(11, "p", "By continuing to browse or by clicking accept, you agree to the storing of cookies "
                       "on your device.", (20, 578, 900, 60)),
            n(12, "p", "Accept", (20, 650, 120, 40))])]),
        "accept", [{"strategy": "word-click", "target": 12}])

    add("implicit_consent",
        doc(content() + [n(10, "div", "", (0, 708, 1366, 60), position="fixed", children=[
            n(11, "p", "Continued use of this site implies consent to cookies.", (20, 718, 800, 40)),
            n(12, "a", "Learn more", (840, 718, 120, 40), href="http://fixture.test/cookies")])]),
        "accept", [], note="no explicit accept")

    add("reject_word",
        doc(content() + [fixed_banner(10, "We use cookies for advertising.", ["Accept all", "Reject all"])]),
        "reject", [{"strategy": "word-click", "target": 14}])

    add("reject_cmp_api",
        doc(content() + [fixed_banner(10, "We and our partners use cookies.", ["Accept", "Learn more"])]),
        "reject", [{"strategy": "cmp-api", "api_call": "OneTrust.RejectAll()"}],
        cmp={"tcf": None, "custom_markers": ["OneTrust"], "callable_rejects": ["OneTrust"]})

    dialog = hide(n(30, "div", "", (383, 184, 600, 400), position="fixed", z=2000, children=[
        n(31, "h2", "Privacy preferences", (400, 200, 560, 30)),
        n(34, "p", "Choose which cookies we may use.", (400, 240, 560, 40)),
        n(32, "button", "Reject all", (400, 320, 150, 40), click=True),
        n(33, "button", "Save choices", (560, 320, 150, 40), click=True)]))
    add("reject_via_settings",
        doc(content() + [fixed_banner(10, "We use cookies to measure audiences.", ["Accept", "Cookie settings"]), dialog]),
        "reject", [{"strategy": "settings-then-word", "target": 14}])

    add("reject_full_chain",
        doc(content() + [fixed_banner(10, "We use cookies.", ["Reject all", "Accept all", "Customize"])]),
        "reject", [{"strategy": "word-click", "target": 13},
                   {"strategy": "cmp-api", "api_call": "Didomi.setUserDisagreeToAll()"},
                   {"strategy": "settings-then-word", "target": 15}],
        cmp={"tcf": {"cmp_id": 7, "cmp_name": None}, "custom_markers": ["Didomi"], "callable_rejects": ["Didomi"]})

    add("ambiguous_button",
        doc(content() + [n(10, "div", "", (0, 568, 1366, 200), position="fixed", children=[
            n(11, "p", "We use cookies.", (20, 578, 400, 40)),
            n(12, "button", "Accept or reject", (20, 630, 200, 40), click=True),
            n(13, "a", "Accept all", (240, 630, 150, 40), href="http://fixture.test/#")])]),
        "accept", [{"strategy": "word-click", "target": 13}])

    add("button_beats_link",
        doc(content() + [n(10, "div", "", (0, 568, 1366, 200), position="fixed", children=[
            n(11, "p", "We use cookies.", (20, 578, 400, 40)),
            n(12, "a", "Accept", (20, 630, 100, 40), href="http://fixture.test/#"),
            n(13, "button", "Accept all cookies", (140, 630, 200, 40), click=True)])]),
        "accept", [{"strategy": "word-click", "target": 13}])

    add("negated_accept_misclick",
        doc(content() + [n(10, "div", "", (0, 568, 1366, 200), position="fixed", children=[
            n(11, "p", "We use cookies.", (20, 578, 400, 40)),
            n(12, "button", "Do NOT accept", (20, 630, 200, 40), click=True)])]),
        "accept", [{"strategy": "word-click", "target": 12}])

    add("no_reject_route",
        doc(content() + [fixed_banner(10, "We use cookies.", ["Accept"])]),
        "reject", [], note="no reject route")

    return cases


# ------------------------------------------------------------------ world

def site_snapshot(host, name, banner_buttons, extra=(), dnsmpi=False, links=True):
    url = "http://%s/" % host
    body = [n(3, "h1", name, (10, 10, 320, 30)),
            n(4, "p", "Welcome to the front page.", (10, 50, 320, 40))]
    if links:
        body += [n(5, "a", "About", (10, 100, 100, 20), href=url + "about"),
                 n(6, "a", "Contact", (120, 100, 100, 20), href=url + "contact"),
                 n(7, "a", "Partner", (230, 100, 100, 20), href="http://elsewhere.test/")]
    if dnsmpi:
        body.append(n(8, "a", "Do Not Sell My Personal Information", (10, 130, 320, 20), href=url + "ccpa"))
    if banner_buttons is not None:
        row = [n(13 + i, "button", b, (10 + 110 * i, 590, 100, 40), click=True)
               for i, b in enumerate(banner_buttons)]
        body.append(n(10, "div", "", (0, 495, 340, 200), position="fixed", z=100, children=[
            n(11, "p", "We use cookies to personalise content.", (10, 505, 320, 60)),
            n(12, "div", "", (10, 580, 320, 60), children=row)]))
    body += list(extra)
    return doc(body, url=url, viewport=MOBILE)


def world():
    sites_dir = ROOT / "sites"
    snaps = {}

    def snap(name, snapshot):
        snaps[name] = snapshot
        return "sites/" + name + ".json"

    fp = ["sid=a1; Path=/", "lang=en; Path=/; Max-Age=31536000"]
    hosts = {
        # Site A: 2 first-party + 3 third-party (1 tracking) before consent;
        # accepting adds 4 third-party cookies, 2 of them tracking.
        "site-a.test": {
            "/": {"snapshot": snap("site_a", site_snapshot("site-a.test", "Site A", ["Accept all"], dnsmpi=True)),
                  "set_cookie": fp,
                  "subresources": ["http://cdn.widgets.test/w.js", "http://px.adtrack.test/p"],
                  "cmp": {"tcf": {"cmp_id": 10, "cmp_name": None}, "custom_markers": []},
                  "actions": {"13": {"load": ["http://cdn.widgets.test/consent", "http://px.adtrack.test/consent"],
                                     "remove": [10]}}},
            "/about": {"snapshot": snap("site_a_about", site_snapshot("site-a.test", "About A", ["Accept all"], links=False)),
                       "set_cookie": ["sid=a1; Path=/"],
                       "subresources": ["http://px.adtrack.test/p"]},
            "/contact": {"snapshot": snap("site_a_contact", site_snapshot("site-a.test", "Contact A", None, links=False)),
                         "set_cookie": ["sid=a1; Path=/"]},
            "/ccpa": {"snapshot": snap("site_a_ccpa", site_snapshot("site-a.test", "Opt out", None, links=False))},
        },
        "cdn.widgets.test": {
            "/w.js": {"set_cookie": ["wid=1; Domain=widgets.test; Path=/", "wpref=dark; Path=/"]},
            "/consent": {"set_cookie": ["wc1=1; Domain=widgets.test; Path=/", "wc2=1; Domain=widgets.test; Path=/"]},
        },
        "px.adtrack.test": {
            "/p": {"set_cookie": ["uid=42; Domain=adtrack.test; Path=/; Max-Age=63072000"]},
            "/consent": {"set_cookie": ["ad_sync=1; Domain=adtrack.test; Path=/", "ad_seg=7; Domain=adtrack.test; Path=/"]},
        },
        # Site B: explicit reject word.
        "site-b.test": {
            "/": {"snapshot": snap("site_b", site_snapshot("site-b.test", "Site B", ["Accept all", "Reject all"])),
                  "set_cookie": ["sid=b1; Path=/"],
                  "cmp": {"tcf": {"cmp_id": 10, "cmp_name": "Quantcast"}, "custom_markers": ["__cmp"]},
                  "actions": {"13": {"load": ["http://px.adtrack.test/consent"], "remove": [10]},
                              "14": {"remove": [10]}}},
        },
        # Site C: reject only inside the settings dialog.
        "site-c.test": {
            "/": {"snapshot": snap("site_c", site_snapshot("site-c.test", "Site C", ["Accept", "Cookie settings"], extra=[
                hide(n(30, "div", "", (0, 300, 340, 395), position="fixed", z=200, children=[
                    n(31, "h2", "Privacy preferences", (10, 310, 320, 30)),
                    n(34, "p", "Choose which cookies we may use.", (10, 350, 320, 40)),
                    n(32, "button", "Reject all", (10, 400, 150, 40), click=True),
                    n(33, "button", "Save", (180, 400, 150, 40), click=True)]))])),
                  "set_cookie": ["sid=c1; Path=/"],
                  "subresources": ["http://px.adtrack.test/p"],
                  "actions": {"13": {"load": ["http://px.adtrack.test/consent"], "remove": [10]},
                              "14": {"remove": [10], "show": [30]},
                              "32": {"remove": [30]}}},
        },
        # Site D: reject only through the CMP's own API.
        "site-d.test": {
            "/": {"snapshot": snap("site_d", site_snapshot("site-d.test", "Site D", ["Accept", "Learn more"])),
                  "set_cookie": ["sid=d1; Path=/"],
                  "cmp": {"tcf": None, "custom_markers": ["OneTrust"], "callable_rejects": ["OneTrust"]},
                  "cmp_reject": {"OneTrust": {"remove": [10]}},
                  "actions": {"13": {"load": ["http://px.adtrack.test/consent"], "remove": [10]}}},
        },
        # Site E: the server never answers within the page-load budget.
        "site-e.test": {"/": {"snapshot": snap("site_e", site_snapshot("site-e.test", "Site E", None)),
                              "hang_ms": 600000}},
        # Site F: loads, then its scripts hang every probe call.
        "site-f.test": {"/": {"snapshot": snap("site_f", site_snapshot("site-f.test", "Site F", ["Accept"])),
                              "set_cookie": ["sid=f1; Path=/"], "freeze": True}},
        "elsewhere.test": {"/": {"snapshot": snap("elsewhere", site_snapshot("elsewhere.test", "Elsewhere", None, links=False))}},
        # Redirects to its www host.
        "site-r.test": {"/": {"redirect": "http://www.site-r.test/"}},
        "www.site-r.test": {"/": {"snapshot": snap("site_r", site_snapshot("www.site-r.test", "Site R", ["Got it"])),
                                  "set_cookie": ["sid=r1; Domain=site-r.test; Path=/"]}},
        # Banner rendered 0.15 s after load (second detection attempt).
        "site-l.test": {"/": {"snapshot": snap("site_l", site_snapshot("site-l.test", "Site L", ["Accept"])),
                              "before_banner": snap("site_l_before", site_snapshot("site-l.test", "Site L", None)),
                              "banner_delay_ms": 150}},
    }
    for name, snapshot in snaps.items():
        write(sites_dir / (name + ".json"), snapshot)
    write(ROOT / "world.json", {"hosts": hosts})
    (ROOT / "blocklist.txt").write_text("# tracker domains of the fixture world\nadtrack.test\n")
    (ROOT / "targets.csv").write_text(
        "1,site-a.test\n2,site-b.test\n3,site-c.test\n4,site-d.test\n5,site-e.test\n6,site-f.test\n")


def main():
    for subdir, cases in (("detection", detection_fixtures()), ("interaction", interaction_fixtures())):
        manifest = []
        for name, snapshot, entry in cases:
            write(ROOT / subdir / (name + ".json"), snapshot)
            manifest.append(entry)
        write(ROOT / subdir / "manifest.json", manifest)
    world()


if __name__ == "__main__":
    main()
