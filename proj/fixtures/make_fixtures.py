#!/usr/bin/env python3
"""Regenerates the bundled .bpdmn.json fixtures.

Run from anywhere after building: python3 fixtures/make_fixtures.py [path/to/bpdmn]
Each file is passed through `bpdmn format --write` so it is stored in canonical form.
"""

import json
import pathlib
import subprocess
import sys

HERE = pathlib.Path(__file__).resolve().parent
BPDMN = pathlib.Path(sys.argv[1]) if len(sys.argv) > 1 else HERE.parent / "build" / "bpdmn"


# ---------------------------------------------------------------- builders

def var(name, vtype="string", optional=False):
    v = {"name": name, "type": vtype}
    if optional:
        v["optional"] = True
    return v


def node(id, name, kind, **extra):
    n = {"id": id, "name": name, "kind": kind}
    n.update(extra)
    return n


def task(id, name=None, **extra):
    return node(id, name or id, "task", **extra)


def start(id="start", name="Start"):
    return node(id, name, "start_event_none")


def mstart(id="start", name="Message Start"):
    return node(id, name, "start_event_message")


def end(id="end", name="End"):
    return node(id, name, "end_event")


def att(obj, direction, optional=False):
    a = {"object": obj, "direction": direction}
    if optional:
        a["optional"] = True
    return a


def carry(obj):
    """Object handed from the source node to the target node."""
    return [att(obj, "output"), att(obj, "input")]


def seq(id, source, target, attachments=(), guard=None, default=False):
    f = {"id": id, "source": source, "target": target}
    if attachments:
        f["attachments"] = list(attachments)
    if guard is not None:
        f["guard"] = guard
    if default:
        f["default"] = True
    return f


def dflow(id, source, target, obj, optional=False):
    f = {"id": id, "source": source, "target": target, "object": obj}
    if optional:
        f["optional"] = True
    return f


def msg(id, source, target, attachments=()):
    f = {"id": id, "source": source, "target": target}
    if attachments:
        f["attachments"] = list(attachments)
    return f


def pool(id, name, nodes=(), flows=(), data_flows=(), external=False):
    p = {"id": id, "name": name, "nodes": list(nodes), "sequence_flows": list(flows),
         "data_flows": list(data_flows)}
    if external:
        p["external"] = True
    return p


def obj(id, name, variables=(), stereotype="generic", physicality="digital", **extra):
    o = {"id": id, "name": name, "stereotype": stereotype, "physicality": physicality,
         "variables": list(variables)}
    o.update(extra)
    return o


def store(id, name, entities=(), icon="database", scope="diagram", relationships=(),
          generalizations=(), collapsed=False):
    s = {"id": id, "name": name, "icon": icon, "scope": scope, "entities": list(entities),
         "relationships": list(relationships), "generalizations": list(generalizations)}
    if collapsed:
        s["collapsed"] = True
    return s


def entity(name, *fields):
    return {"name": name, "fields": list(fields)}


def mapping(id, source, target, rules):
    return {"id": id, "source": source, "target": target,
            "rules": [{"from": f, "to": t} for f, t in rules]}


def diagram(id, pools=(), stores=(), objects=(), mappings=(), message_flows=(), **simulation):
    d = {"bpdmn": "1.0", "id": id, "pools": list(pools), "stores": list(stores),
         "objects": list(objects), "mappings": list(mappings), "message_flows": list(message_flows)}
    d.update({k: v for k, v in simulation.items() if v})
    return d


def linear(pid, tasks, flows_attach=None, data_flows=(), name=None, start_node=None):
    """start -> tasks... -> end, with optional attachments keyed by flow index."""
    flows_attach = flows_attach or {}
    first = start_node or start(pid + "_start")
    chain = [first] + tasks + [end(pid + "_end")]
    flows = [seq(f"{pid}_f{i}", chain[i]["id"], chain[i + 1]["id"], flows_attach.get(i, ()))
             for i in range(len(chain) - 1)]
    return pool(pid, name or pid, chain, flows, data_flows)


def write(path, doc):
    path = HERE / path
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(json.dumps(doc, indent=2) + "\n")
    if path.name.endswith(".bpdmn.json"):
        subprocess.run([str(BPDMN), "format", "--write", str(path)], check=True)


# ---------------------------------------------------------------- travel booking

def travel():
    nodes = [
        mstart("start", "Receive Request"),
        task("check_cc", "Check Credit Card"),
        node("gw_card", "Card Valid?", "gateway_exclusive_data"),
        node("split", "Split", "gateway_parallel"),
        task("check_hotel", "Check Hotel Reservation"),
        task("check_car", "Check Car Reservation"),
        task("check_flight", "Check Flight Reservation"),
        node("join", "Join", "gateway_parallel"),
        task("archive_plan", "Archive Travel Plan"),
        end("reply", "Send Confirmation"),
        end("reject", "Reject Request"),
    ]
    flows = [
        seq("f01", "start", "check_cc", [att("input", "output"), att("request", "input")]),
        seq("f02", "check_cc", "gw_card", carry("response")),
        seq("f03", "gw_card", "split", guard="response.valid"),
        seq("f04", "gw_card", "reject", default=True),
        seq("f05", "split", "check_hotel", [att("hotel_req", "input")]),
        seq("f06", "split", "check_car", [att("car_req", "input")]),
        seq("f07", "split", "check_flight", [att("flight_req", "input")]),
        seq("f08", "check_hotel", "join", [att("hotel_res", "output")]),
        seq("f09", "check_car", "join", [att("car_res", "output")]),
        seq("f10", "check_flight", "join", [att("flight_res", "output")]),
        seq("f11", "join", "archive_plan",
            [att("hotel_res", "input"), att("car_res", "input"), att("flight_res", "input")]),
        seq("f12", "archive_plan", "reply", [att("confirmation", "output")]),
    ]
    objects = [
        obj("input", "Input", [var("cardNumber"), var("cardType"), var("customer"), var("hotelCompany"),
                               var("carCompany"), var("flightCompany")],
            stereotype="message", message_type="input"),
        obj("request", "Request", [var("cardNumber"), var("cardType")], stereotype="message",
            message_type="doCreditCardCheckingRequest"),
        obj("response", "Response", [var("valid", "boolean")], stereotype="message",
            message_type="doCreditCardCheckingResponse"),
        obj("hotel_req", "Hotel Request", [var("name")], stereotype="message",
            message_type="checkHotelReservationRequest"),
        obj("car_req", "Car Request", [var("company")], stereotype="message",
            message_type="checkCarReservationRequest"),
        obj("flight_req", "Flight Request", [var("airline")], stereotype="message",
            message_type="checkFlightReservationRequest"),
        obj("hotel_res", "Hotel Response", [var("hotel"), var("confirmed", "boolean")], stereotype="message",
            message_type="checkHotelReservationResponse"),
        obj("car_res", "Car Response", [var("car"), var("confirmed", "boolean")], stereotype="message",
            message_type="checkCarReservationResponse"),
        obj("flight_res", "Flight Response", [var("flight"), var("confirmed", "boolean")], stereotype="message",
            message_type="checkFlightReservationResponse"),
        obj("plan", "Travel Plan", [var("TravelPlan.customer"), var("TravelPlan.hotel"), var("TravelPlan.car"),
                                    var("TravelPlan.flight")],
            stereotype="document", origin_store="archive"),
        obj("confirmation", "Confirmation", [var("status")], stereotype="message", message_type="confirmation"),
    ]
    stores = [store("archive", "Archive (DB)", [
        entity("TravelPlan", var("customer"), var("hotel"), var("car"), var("flight")),
    ])]
    mappings = [
        mapping("dm1", "input", "request", [("input.cardNumber", "cardNumber"), ("input.cardType", "cardType")]),
        mapping("dm2", "input", "hotel_req", [("input.hotelCompany", "name")]),
        mapping("dm3", "input", "car_req", [("input.carCompany", "company")]),
        mapping("dm4", "input", "flight_req", [("input.flightCompany", "airline")]),
    ]
    messages = [
        msg("m_request", "customer", "start", [att("input", "input")]),
        msg("m_confirm", "reply", "customer", [att("confirmation", "output")]),
        msg("m_reject", "reject", "customer"),
    ]
    behaviors = {
        "check_cc": {"effects": [
            {"target": "response.valid", "value": "request.cardType = 'VISA' or request.cardType = 'MASTERCARD'"}]},
        "check_hotel": {"effects": [{"target": "hotel_res.hotel", "value": "hotel_req.name"},
                                    {"target": "hotel_res.confirmed", "value": "true"}]},
        "check_car": {"effects": [{"target": "car_res.car", "value": "car_req.company"},
                                  {"target": "car_res.confirmed", "value": "true"}]},
        "check_flight": {"effects": [{"target": "flight_res.flight", "value": "flight_req.airline"},
                                     {"target": "flight_res.confirmed", "value": "true"}]},
        "archive_plan": {"effects": [
            {"target": "plan.TravelPlan.customer", "value": "input.customer"},
            {"target": "plan.TravelPlan.hotel", "value": "hotel_res.hotel"},
            {"target": "plan.TravelPlan.car", "value": "car_res.car"},
            {"target": "plan.TravelPlan.flight", "value": "flight_res.flight"},
            {"target": "confirmation.status", "value": "'confirmed'"}]},
    }
    start_inputs = {"input": {"cardNumber": "4111111111111111", "cardType": "VISA", "customer": "Rossi",
                              "hotelCompany": "Grand Hotel", "carCompany": "Rent4U",
                              "flightCompany": "SkyLines"}}
    doc = diagram("travel",
                  [pool("customer", "Customer", external=True),
                   pool("travel", "Travel Booking", nodes, flows,
                        [dflow("d_archive", "archive_plan", "archive", "plan")])],
                  stores, objects, mappings, messages, behaviors=behaviors, start_inputs=start_inputs)
    write("travel.bpdmn.json", doc)
    invalid = dict(start_inputs["input"], cardType="EXPIRED")
    write("travel.invalid-card.json", {"start_inputs": {"input": invalid}})


# ---------------------------------------------------------------- ECO definition

def eco():
    tech_nodes = [
        mstart("to_start", "ECO Request"),
        task("fill_form", "Fill ECO Form"),
        task("send_id", "Send ECO ID"),
        node("to_outcome", "Receive Outcome", "intermediate_message"),
        end("to_end", "ECO Defined"),
    ]
    tech_flows = [
        seq("tf1", "to_start", "fill_form", carry("eco_request")),
        seq("tf2", "fill_form", "send_id", carry("eco_id")),
        seq("tf3", "send_id", "to_outcome"),
        seq("tf4", "to_outcome", "to_end"),
    ]
    tech_data = [
        dflow("td_form", "fill_form", "OracleDB", "Form_Data"),
        dflow("td_instr", "Manuals", "fill_form", "Filling_Instructions", optional=True),
    ]
    mt_nodes = [
        mstart("mt_start", "Receive ECO ID"),
        task("check_eco", "Check ECO Data"),
        node("gw_check", "ECO OK?", "gateway_exclusive_data"),
        task("process_eco", "Process ECO"),
        task("notify", "Notify Technical Office"),
        end("mt_end_ok", "ECO Processed"),
        end("mt_end_fail", "ECO Rejected"),
    ]
    mt_flows = [
        seq("mf1", "mt_start", "check_eco", [att("Input", "input")]),
        seq("mf2", "check_eco", "gw_check", carry("Checked_Data")),
        seq("mf3", "gw_check", "process_eco", guard="Checked_Data.ok"),
        seq("mf4", "gw_check", "notify", default=True),
        seq("mf5", "process_eco", "mt_end_ok"),
        seq("mf6", "notify", "mt_end_fail"),
    ]
    mt_data = [dflow("md_eco", "OracleDB", "check_eco", "ECO_Data")]
    stores = [
        store("OracleDB", "Oracle DB", [
            entity("ECO", var("ecoID"), var("replacedComponent"), var("procedureManager")),
            entity("Device", var("deviceID"), var("description")),
            entity("Component", var("componentID"), var("available", "boolean")),
        ], relationships=[{"name": "modifies", "left": "ECO", "right": "Device"},
                          {"name": "installs", "left": "ECO", "right": "Component"}]),
        store("Manuals", "Manuals", [entity("Document", var("title"), var("url"))], icon="folder"),
    ]
    form_vars = ["ECO.ecoID", "ECO.replacedComponent", "ECO.procedureManager", "Device.deviceID",
                 "Device.description", "Component.componentID"]
    objects = [
        obj("eco_request", "ECO Request", [var("ecoID"), var("deviceID"), var("description"), var("componentID"),
                                           var("replacedComponent"), var("manager"),
                                           var("componentAvailable", "boolean")], stereotype="message"),
        obj("Form_Data", "Form Data", [var(v) for v in form_vars] + [var("Component.available", "boolean")],
            stereotype="document", origin_store="OracleDB"),
        obj("Filling_Instructions", "Filling Instructions", [var("Document.title"), var("Document.url")],
            stereotype="document", origin_store="Manuals", url="http://intranet.example/eco/instructions.doc"),
        obj("eco_id", "ECO ID", [var("ecoID")], stereotype="message"),
        obj("ECO_Data", "Eco Data", [var("Device.deviceID"), var("Device.description"),
                                      var("Component.componentID"), var("Component.available", "boolean")],
            origin_store="OracleDB"),
        obj("Input", "Input", [var("device")], stereotype="message"),
        obj("Checked_Data", "Checked Data", [var("ok", "boolean")]),
    ]
    mappings = [mapping("dm_eco", "ECO_Data", "Input", [("ECO_Data.Device.deviceID", "device")])]
    messages = [
        msg("m_request", "requester", "to_start", [att("eco_request", "input")]),
        msg("m_id", "send_id", "mt_start", [att("eco_id", "output"), att("eco_id", "input")]),
        msg("m_done", "process_eco", "to_outcome"),
        msg("m_fail", "notify", "to_outcome"),
    ]
    behaviors = {
        "fill_form": {"effects": [
            {"target": "Form_Data.ECO.ecoID", "value": "eco_request.ecoID"},
            {"target": "Form_Data.ECO.replacedComponent", "value": "eco_request.replacedComponent"},
            {"target": "Form_Data.ECO.procedureManager", "value": "eco_request.manager"},
            {"target": "Form_Data.Device.deviceID", "value": "eco_request.deviceID"},
            {"target": "Form_Data.Device.description", "value": "eco_request.description"},
            {"target": "Form_Data.Component.componentID", "value": "eco_request.componentID"},
            {"target": "Form_Data.Component.available", "value": "eco_request.componentAvailable"},
            {"target": "eco_id.ecoID", "value": "eco_request.ecoID"}]},
        "check_eco": {
            "reads": [{"store": "OracleDB", "entity": "ECO", "object": "ECO_Data",
                       "filter": "ECO_Data.ECO.ecoID = eco_id.ecoID"}],
            "effects": [{"target": "Checked_Data.ok",
                         "value": "ECO_Data.Component.available and Input.device = ECO_Data.Device.deviceID"}]},
    }
    request = {"ecoID": "ECO-042", "deviceID": "DEV-7", "description": "hydraulic press",
               "componentID": "VALVE-3", "replacedComponent": "VALVE-2", "manager": "Bianchi",
               "componentAvailable": True}
    records = {"Manuals": [{"Document.title": "ECO filling instructions",
                            "Document.url": "http://intranet.example/eco/instructions.doc"}]}
    doc = diagram("eco",
                  [pool("requester", "Requester", external=True),
                   pool("technical", "Technical Office", tech_nodes, tech_flows, tech_data),
                   pool("maintenance", "Maintenance Department", mt_nodes, mt_flows, mt_data)],
                  stores, objects, mappings, messages,
                  behaviors=behaviors, start_inputs={"eco_request": request}, initial_records=records)
    write("eco.bpdmn.json", doc)
    write("eco.fail.json", {"start_inputs": {"eco_request": dict(request, componentAvailable=False)}})


# ---------------------------------------------------------------- validator pairs

def producer_consumer(extra_objects=(), **kw):
    """start -> produce -> consume -> end with `doc` handed over."""
    p = linear("p", [task("produce", "Produce"), task("consume", "Consume")], {1: carry("doc")})
    return p, [obj("doc", "Document", [var("text")], stereotype="document")] + list(extra_objects)


def validator_fixtures():
    # V1: every used object has a source and a target.
    p, objs = producer_consumer()
    write("good-v1.bpdmn.json", diagram("good_v1", [p], objects=objs))
    bad = linear("p", [task("produce", "Produce"), task("consume", "Consume")],
                 {1: carry("doc"), 2: [att("orphan", "input")]})
    write("bad-v1.bpdmn.json", diagram("bad_v1", [bad], objects=objs + [obj("orphan", "Orphan", [var("x")])]))

    # V2: optional marks only on inputs.
    ok = linear("p", [task("produce", "Produce"), task("consume", "Consume")],
                {1: [att("doc", "output"), att("doc", "input", optional=True)]})
    write("good-v2.bpdmn.json", diagram("good_v2", [ok], objects=objs))
    bad = linear("p", [task("produce", "Produce"), task("consume", "Consume")],
                 {1: [att("doc", "output", optional=True), att("doc", "input")]})
    write("bad-v2.bpdmn.json", diagram("bad_v2", [bad], objects=objs))

    # V3: mappings read their source object and write scalar target variables.
    both = objs + [obj("form", "Form", [var("body")])]
    p3 = linear("p", [task("produce", "Produce"), task("consume", "Consume")],
                {1: [att("doc", "output"), att("form", "input")]})
    write("good-v3.bpdmn.json", diagram("good_v3", [p3], objects=both,
                                        mappings=[mapping("dm", "doc", "form", [("doc.text", "body")])]))
    write("bad-v3.bpdmn.json", diagram("bad_v3", [p3], objects=both,
                                       mappings=[mapping("dm", "doc", "form", [("form.body", "missing")])]))

    # V4: entity graphs.
    good_store = store("db", "Registry", [entity("Party", var("name")), entity("Person", var("age", "number"))],
                       relationships=[{"name": "knows", "left": "Person", "right": "Party"}],
                       generalizations=[{"parent": "Party", "child": "Person"}])
    p4 = linear("p", [task("register", "Register")], data_flows=[dflow("df", "register", "db", "rec")])
    rec = obj("rec", "Record", [var("Person.name"), var("Person.age", "number")], origin_store="db")
    write("good-v4.bpdmn.json", diagram("good_v4", [p4], [good_store], [rec]))
    cyc = store("db", "Registry", [entity("Party", var("name")), entity("Person", var("age", "number"))],
                generalizations=[{"parent": "Party", "child": "Person"}, {"parent": "Person", "child": "Party"}])
    write("bad-v4.bpdmn.json", diagram("bad_v4", [p4], [cyc], [obj("rec", "Record", [var("x")])]))

    # V5: sub-process stores are private to their sub-process.
    def scoped(reader_inside):
        inner = [start("sp_start"), task("inner", "Inner Task"), end("sp_end")]
        sp = node("sp", "Sub-process", "sub_process", children=inner)
        nodes = [start("s"), sp, task("outer", "Outer Task"), end("e")]
        flows = [seq("f1", "s", "sp"), seq("f2", "sp", "outer"), seq("f3", "outer", "e"),
                 seq("f4", "sp_start", "inner"), seq("f5", "inner", "sp_end")]
        writer = "inner" if reader_inside else "outer"
        local = store("scratch", "Scratch", [entity("Note", var("text"))], icon="folder",
                      scope={"sub_process": "sp"})
        return diagram("scoped", [pool("p", "Process", nodes, flows, [dflow("df", writer, "scratch", "note")])],
                       [local], [obj("note", "Note", [var("text")])])
    write("good-v5.bpdmn.json", scoped(True))
    write("bad-v5.bpdmn.json", scoped(False))

    # V6: message flows cross pools.
    a = linear("a", [task("ask", "Ask")], name="Pool A")
    b = pool("b", "Pool B", [mstart("b_start", "Receive"), task("answer", "Answer"), end("b_end")],
             [seq("bf1", "b_start", "answer"), seq("bf2", "answer", "b_end")])
    write("good-v6.bpdmn.json", diagram("good_v6", [a, b], message_flows=[msg("m", "ask", "b_start")]))
    a2 = pool("a", "Pool A", [start("a_start"), task("ask", "Ask"), task("tell", "Tell"), end("a_end")],
              [seq("af1", "a_start", "ask"), seq("af2", "ask", "tell"), seq("af3", "tell", "a_end")])
    write("bad-v6.bpdmn.json", diagram("bad_v6", [a2], message_flows=[msg("m", "ask", "tell")]))

    # V7: internal pools have a start and an end.
    write("good-v7.bpdmn.json", diagram("good_v7", [linear("p", [task("work", "Work")])]))
    headless = pool("p", "Process", [task("work", "Work"), end("e")], [seq("f", "work", "e")])
    write("bad-v7.bpdmn.json", diagram("bad_v7", [headless]))

    # V8: objects drawn from a store only name its fields.
    inv = store("inv", "Inventory", [entity("Item", var("sku"), var("qty", "number"))])
    p8 = linear("p", [task("count", "Count Stock")], data_flows=[dflow("df", "inv", "count", "item")])
    write("good-v8.bpdmn.json", diagram("good_v8", [p8], [inv],
                                        [obj("item", "Item", [var("Item.sku")], origin_store="inv")],
                                        initial_records={"inv": [{"Item.sku": "A-1", "Item.qty": 4}]}))
    write("bad-v8.bpdmn.json", diagram("bad_v8", [p8], [inv],
                                       [obj("item", "Item", [var("Item.colour")], origin_store="inv")]))

    # V9: a collapsed store still needs structure behind it.
    p9 = linear("p", [task("file", "File Letter")], data_flows=[dflow("df", "file", "cabinet", "letter")])
    letter = obj("letter", "Letter", [var("title")], stereotype="document", physicality="physical")
    full = store("cabinet", "Cabinet", [entity("Folder", var("title"))], icon="folder", collapsed=True)
    empty = store("cabinet", "Cabinet", [], icon="folder", collapsed=True)
    write("good-v9.bpdmn.json", diagram("good_v9", [p9], [full], [letter]))
    write("bad-v9.bpdmn.json", diagram("bad_v9", [p9], [empty], [letter]))


# ---------------------------------------------------------------- simulation scenarios

def simulation_fixtures():
    # The three ways two tasks can share data.
    doc = obj("doc", "Document", [var("text")], stereotype="document")
    write("sharing-direct.bpdmn.json", diagram(
        "sharing_direct", [linear("p", [task("write", "Write Document"), task("read", "Read Document")],
                               {1: carry("doc")})],
        objects=[doc], behaviors={"write": {"effects": [{"target": "doc.text", "value": "'draft'"}]}}))

    shared_doc = obj("sdoc", "Document", [var("Doc.text")], stereotype="document", origin_store="shared")
    shared = store("shared", "Shared Folder", [entity("Doc", var("text"))], icon="folder")
    write("sharing-shared.bpdmn.json", diagram(
        "sharing_shared",
        [linear("p", [task("write", "Write Document"), task("read", "Read Document")],
                data_flows=[dflow("d1", "write", "shared", "sdoc"), dflow("d2", "shared", "read", "sdoc")])],
        [shared], [shared_doc],
        behaviors={"write": {"effects": [{"target": "sdoc.Doc.text", "value": "'draft'"}]}}))

    global_doc = obj("gdoc", "Document", [var("Doc.text")], stereotype="document", origin_store="global_db")
    global_db = store("global_db", "Company DB", [entity("Doc", var("text"))])
    a = linear("a", [task("write", "Write Document")], name="Author",
               data_flows=[dflow("d1", "write", "global_db", "gdoc")])
    b = pool("b", "Reviewer", [mstart("b_start", "Notified"), task("read", "Read Document"), end("b_end")],
             [seq("bf1", "b_start", "read"), seq("bf2", "read", "b_end")],
             [dflow("d2", "global_db", "read", "gdoc")])
    write("sharing-global.bpdmn.json", diagram(
        "sharing_global", [a, b], [global_db], [global_doc], message_flows=[msg("m", "write", "b_start")],
        behaviors={"write": {"effects": [{"target": "gdoc.Doc.text", "value": "'draft'"}]}}))

    # An exclusive split closed by a parallel join: the join waits forever for the branch not taken.
    dl_nodes = [start("s"), task("decide", "Decide"), node("gw", "Which?", "gateway_exclusive_data"),
                task("left", "Left"), task("right", "Right"), node("join", "Join", "gateway_parallel"), end("e")]
    dl_flows = [seq("f1", "s", "decide"), seq("f2", "decide", "gw", carry("choice")),
                seq("f3", "gw", "left", guard="choice.left"), seq("f4", "gw", "right", default=True),
                seq("f5", "left", "join"), seq("f6", "right", "join"), seq("f7", "join", "e")]
    write("deadlock.bpdmn.json", diagram(
        "deadlock", [pool("p", "Process", dl_nodes, dl_flows)],
        objects=[obj("choice", "Choice", [var("left", "boolean")])],
        behaviors={"decide": {"effects": [{"target": "choice.left", "value": "true"}]}}))

    # A required input whose producer is on a parallel branch and needs more steps.
    gate_nodes = [start("s"), node("fork", "Fork", "gateway_parallel"), task("slow1", "Slow 1"),
                  task("slow2", "Slow 2"), task("produce", "Produce"), task("quick", "Quick"),
                  task("consume", "Consume"), node("join", "Join", "gateway_parallel"), end("e")]
    gate_flows = [seq("f01", "s", "fork"), seq("f02", "fork", "slow1"), seq("f03", "slow1", "slow2"),
                  seq("f04", "slow2", "produce"), seq("f05", "fork", "quick"), seq("f06", "quick", "consume"),
                  seq("f07", "produce", "join"), seq("f08", "consume", "join"), seq("f09", "join", "e")]
    write("gating.bpdmn.json", diagram(
        "gating", [pool("p", "Process", gate_nodes, gate_flows,
                        [dflow("d1", "produce", "consume", "token_obj")])],
        objects=[obj("token_obj", "Result", [var("value", "number")])],
        behaviors={"produce": {"effects": [{"target": "token_obj.value", "value": "42"}]}}))

    # Multi-instance task writing one record per instance.
    mi_store = store("ledger", "Ledger", [entity("Line", var("index", "number"))])
    write("multi-instance.bpdmn.json", diagram(
        "multi_instance",
        [linear("p", [task("book", "Book Lines", multi_instance=True, instances=3)],
                data_flows=[dflow("d1", "book", "ledger", "line")])],
        [mi_store], [obj("line", "Line", [var("Line.index", "number")], origin_store="ledger")],
        behaviors={"book": {"inserts": [{"store": "ledger", "entity": "Line",
                                         "fields": {"index": "instance.index"}}]}}))

    # Sub-process with a local store.
    inner = [start("sp_start"), task("draft", "Draft"), task("review", "Review"), end("sp_end")]
    sp = node("sp", "Prepare Offer", "sub_process", children=inner)
    nodes = [start("s"), sp, task("send", "Send Offer"), end("e")]
    flows = [seq("f1", "s", "sp"), seq("f2", "sp", "send", carry("offer")), seq("f3", "send", "e"),
             seq("f4", "sp_start", "draft"), seq("f5", "draft", "review"),
             seq("f6", "review", "sp_end", [att("offer", "output")])]
    write("subprocess.bpdmn.json", diagram(
        "subprocess",
        [pool("p", "Sales", nodes, flows,
              [dflow("d1", "draft", "notes", "note"), dflow("d2", "notes", "review", "note")])],
        [store("notes", "Working Notes", [entity("Note", var("text"))], icon="folder",
               scope={"sub_process": "sp"})],
        [obj("note", "Note", [var("Note.text")], origin_store="notes"), obj("offer", "Offer", [var("price", "number")])],
        behaviors={"draft": {"effects": [{"target": "note.Note.text", "value": "'discount'"}]},
                   "review": {"effects": [{"target": "offer.price", "value": "100"}]}}))

    # Parallel fork without data, for the interleaving oracle.
    diamond = [start("s"), node("fork", "Fork", "gateway_parallel"), task("a", "A"), task("b", "B"),
               node("join", "Join", "gateway_parallel"), end("e")]
    write("parallel.bpdmn.json", diagram("parallel", [pool("p", "Process", diamond, [
        seq("f1", "s", "fork"), seq("f2", "fork", "a"), seq("f3", "fork", "b"),
        seq("f4", "a", "join"), seq("f5", "b", "join"), seq("f6", "join", "e")])]))

    write("empty.bpdmn.json", diagram("empty"))


# ---------------------------------------------------------------- pattern exemplars

def pattern_fixtures():
    out = {}

    def std_store(id="db", icon="database", scope="diagram", name="Records"):
        return store(id, name, [entity("Rec", var("value"))], icon=icon, scope=scope)

    def rec(id="rec", store_id="db"):
        return obj(id, "Record", [var("Rec.value")], origin_store=store_id)

    def one_task_store(direction, icon="database", multi=False):
        t = task("t1", "Work", multi_instance=True, instances=2) if multi else task("t1", "Work")
        df = dflow("df", "t1", "db", "rec") if direction == "write" else dflow("df", "db", "t1", "rec")
        seed = {"db": [{"Rec.value": "seeded"}]} if direction == "read" else None
        return diagram("x", [linear("p", [t], data_flows=[df])], [std_store(icon=icon)], [rec()],
                       initial_records=seed)

    def writer_reader():
        return diagram("x", [linear("p", [task("t1", "Write"), task("t2", "Read")],
                                    data_flows=[dflow("df1", "t1", "db", "rec"), dflow("df2", "db", "t2", "rec")])],
                       [std_store()], [rec()])

    doc = obj("doc", "Document", [var("text")], stereotype="document")
    handover = diagram("x", [linear("p", [task("t1", "Produce"), task("t2", "Consume")], {1: carry("doc")})],
                       objects=[doc])

    out["p1"] = one_task_store("write")
    inner = [start("sp_start"), task("c1", "Child"), end("sp_end")]
    sp = node("sp", "Block", "sub_process", children=inner)
    out["p2"] = diagram("x", [pool("p", "Process", [start("s"), sp, end("e")],
                                   [seq("f1", "s", "sp"), seq("f2", "sp", "e"), seq("f3", "sp_start", "c1"),
                                    seq("f4", "c1", "sp_end")], [dflow("df", "c1", "local", "rec")])],
                        [std_store("local", "folder", {"sub_process": "sp"})], [rec(store_id="local")])
    out["p4"] = one_task_store("write", multi=True)
    out["p5"] = writer_reader()
    out["p7"] = one_task_store("read")
    manual = obj("manual", "Manual", [var("Rec.value")], stereotype="document", origin_store="db",
                 url="http://example.org/manual.pdf")
    out["p8"] = diagram("x", [linear("p", [task("t1", "Consult")],
                                     data_flows=[dflow("df", "db", "t1", "manual", optional=True)])],
                        [std_store(icon="folder")], [manual])
    out["p9"] = handover

    def block(child_in=False, child_out=False):
        inner = [start("sp_start"), task("c1", "Child"), end("sp_end")]
        sp = node("sp", "Block", "sub_process", children=inner)
        nodes = [start("s"), task("t0", "Before"), sp, task("t2", "After"), end("e")]
        flows = [seq("f1", "s", "t0"), seq("f2", "t0", "sp", carry("doc") if child_in else ()),
                 seq("f3", "sp", "t2", carry("doc") if child_out else ()), seq("f4", "t2", "e"),
                 seq("f5", "sp_start", "c1", [att("doc", "input")] if child_in else ()),
                 seq("f6", "c1", "sp_end", [att("doc", "output")] if child_out else ())]
        return diagram("x", [pool("p", "Process", nodes, flows)], objects=[doc])
    out["p10"] = block(child_in=True)
    out["p11"] = block(child_out=True)
    out["p12"] = diagram("x", [linear("p", [task("t1", "Produce"), task("t2", "Fan Out", multi_instance=True,
                                                                          instances=3)], {1: carry("doc")})],
                         objects=[doc])
    out["p13"] = diagram("x", [linear("p", [task("t1", "Fan In", multi_instance=True, instances=3),
                                            task("t2", "Consume")], {1: carry("doc")})], objects=[doc])
    out["p14"] = writer_reader()

    ext = pool("env", "Environment", external=True)
    def with_env(nodes_pool, messages, objects=(), stores=(), **simulation):
        return diagram("x", [ext, nodes_pool], list(stores), list(objects), message_flows=messages, **simulation)

    out["p15"] = with_env(linear("p", [task("t1", "Notify")]), [msg("m1", "t1", "env", [att("doc", "output")])],
                          [doc])
    answer = obj("answer", "Answer", [var("text")], stereotype="message")
    out["p16"] = with_env(linear("p", [task("t1", "Ask")]),
                          [msg("m1", "t1", "env"), msg("m2", "env", "t1", [att("answer", "input")])],
                          [answer], start_inputs={"answer": {"text": "yes"}})
    out["p17"] = with_env(linear("p", [task("t1", "Accept")]), [msg("m1", "env", "t1", [att("answer", "input")])],
                          [answer], start_inputs={"answer": {"text": "yes"}})
    out["p18"] = with_env(linear("p", [task("t1", "Serve")]),
                          [msg("m1", "env", "t1"), msg("m2", "t1", "env", [att("doc", "output")])], [doc])
    out["p19"] = with_env(linear("p", [task("t1", "Work")]), [msg("m1", "p_end", "env")])
    wait = node("wait", "Wait for Data", "intermediate_message")
    out["p20"] = with_env(linear("p", [wait]), [msg("m1", "env", "wait", [att("answer", "input")])], [answer],
                          start_inputs={"answer": {"text": "ready"}})
    out["p21"] = with_env(linear("p", [task("t1", "Work")], start_node=mstart("p_start", "Triggered")),
                          [msg("m1", "env", "p_start")])
    out["p22"] = with_env(linear("p", [task("t1", "Work")], start_node=mstart("p_start", "Triggered")),
                          [msg("m1", "env", "p_start"), msg("m2", "p_end", "env")])
    out["p23"] = one_task_store("write")
    out["p24"] = one_task_store("read")
    incoming = obj("rec", "Record", [var("Rec.value")], stereotype="message", origin_store="db")
    out["p25"] = with_env(linear("p", [task("t1", "Register")], {0: carry("rec")},
                                 start_node=mstart("p_start", "Received"),
                                 data_flows=[dflow("df", "t1", "db", "rec")]),
                          [msg("m1", "env", "p_start", [att("rec", "input")])], [incoming], [std_store()],
                          start_inputs={"rec": {"Rec.value": "incoming"}})
    out["p26"] = with_env(linear("p", [task("t1", "Publish")], data_flows=[dflow("df", "db", "t1", "rec")]),
                          [msg("m1", "t1", "env", [att("rec", "output")])], [rec()], [std_store()],
                          initial_records={"db": [{"Rec.value": "published"}]})
    out["p27"] = handover
    out["p28"] = handover
    out["p29"] = diagram("x", [linear("p", [task("t1", "Update")],
                                      data_flows=[dflow("df1", "db", "t1", "rec"), dflow("df2", "t1", "db", "rec")])],
                         [std_store()], [rec()], initial_records={"db": [{"Rec.value": "old"}]})
    out["p30"] = writer_reader()
    out["p31"] = one_task_store("write")
    form = obj("form", "Form", [var("body")])
    mapped = diagram("x", [linear("p", [task("t1", "Produce"), task("t2", "Consume")],
                                  {1: [att("doc", "output"), att("form", "input")]})],
                     objects=[doc, form], mappings=[mapping("dm", "doc", "form", [("doc.text", "body")])])
    out["p32"] = mapped
    out["p33"] = mapped
    out["p34"] = handover
    out["p36"] = handover
    out["p38"] = out["p21"]
    out["p39"] = one_task_store("read")
    amount = obj("amount", "Amount", [var("value", "number")])
    route_nodes = [start("s"), task("t1", "Estimate"), node("gw", "Large?", "gateway_exclusive_data"),
                   task("big", "Approve"), task("small", "Accept"), end("e1"), end("e2")]
    route_flows = [seq("f1", "s", "t1"), seq("f2", "t1", "gw", carry("amount")),
                   seq("f3", "gw", "big", guard="amount.value > 1000"), seq("f4", "gw", "small", default=True),
                   seq("f5", "big", "e1"), seq("f6", "small", "e2")]
    out["p40"] = diagram("x", [pool("p", "Process", route_nodes, route_flows)], objects=[amount])
    out["structure"] = one_task_store("write")
    out["explicit_data_flow"] = one_task_store("read")
    out["data_control_flow"] = handover
    out["process_data_store"] = one_task_store("write")

    for key, doc_ in out.items():
        write(f"patterns/{key}.bpdmn.json", dict(doc_, id=f"pattern_{key}"))


if __name__ == "__main__":
    travel()
    eco()
    validator_fixtures()
    simulation_fixtures()
    pattern_fixtures()
